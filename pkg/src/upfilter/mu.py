"""Feferman's mu by bounded search, mu obtained from a filter, and K'.

``mu_via_filter`` follows the filter route: from the zero set Z of ``f``
form ``X_f = {x : some x' < x has f(x') = 0}``.  ``X_f`` is cofinite when
Z is nonempty and empty otherwise, so asking the filter whether it holds
``X_f`` answers whether ``f`` has a zero at all; only then is a search
started, and that search is bounded.
"""

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import CertificateMismatch
from .pfilter import PartialFilter
from .upset import UPSet

__all__ = ["SearchableFn", "mu_search", "x_f", "mu_via_filter", "k_prime"]


@dataclass(frozen=True)
class SearchableFn:
    evaluator: Callable[[int], int]
    zero_set: Optional[UPSet] = None

    def __call__(self, x):
        return self.evaluator(x)

    def certificate_bound(self):
        z = self.zero_set
        return z.threshold + 2 * z.period

    def check_certificate(self):
        """Refute the zero-set certificate by sampling, if possible."""
        if self.zero_set is None:
            raise CertificateMismatch("no zero-set certificate")
        for x in range(self.certificate_bound()):
            if (self.evaluator(x) == 0) != (x in self.zero_set):
                raise CertificateMismatch(
                    f"certificate disagrees with f at {x}", x=x, value=self.evaluator(x)
                )


def mu_search(f, bound):
    """Least ``x < bound`` with ``f(x) == 0``, else ``None``."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    for x in range(bound):
        if f(x) == 0:
            return x
    return None


def x_f(zero_set):
    """``{x : exists x' < x in zero_set}``."""
    first = zero_set.min()
    if first is None:
        return UPSet.empty()
    return UPSet.at_least(first + 1)


def mu_via_filter(f: SearchableFn, filt: PartialFilter, tiebreak="bit0"):
    """Returns ``(zero or None, extended filter)``."""
    f.check_certificate()
    xf = x_f(f.zero_set)
    filt = filt.extend_to_include([xf], tiebreak)
    if not filt.contains(xf):
        return None, filt
    z = f.zero_set
    # the least zero is an exception or lies in the first period of the tail
    x = mu_search(f, z.threshold + z.period)
    if x is None:
        raise CertificateMismatch("filter reports a zero but bounded search found none")
    return x, filt


def k_prime(n, x: UPSet):
    """Least element of ``x`` above ``n``; 0 when there is none."""
    k = x.least_above(n)
    return 0 if k is None else k
