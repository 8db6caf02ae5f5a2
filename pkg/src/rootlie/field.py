"""Prime fields F_p with small modulus."""

from dataclasses import dataclass
from functools import lru_cache

MAX_PRIME = 251


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def primes_from(start: int = 2):
    """Yield primes >= start in ascending order."""
    n = max(start, 2)
    while True:
        if is_prime(n):
            yield n
        n += 1


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p > MAX_PRIME:
            raise ValueError(f"field modulus must be a prime <= {MAX_PRIME}, got {self.p}")

    def __call__(self, value: int) -> int:
        return value % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def elements(self):
        return range(self.p)

    def __repr__(self):
        return f"F{self.p}"
