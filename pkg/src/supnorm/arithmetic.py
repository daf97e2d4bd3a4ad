"""Modular arithmetic substrate: square-free moduli, Dirichlet characters, valuations.

Characters are stored per prime component by the exponent of the image of a fixed
primitive root, so multiplication, conjugation and evaluation are exact rational-angle
arithmetic; floats appear only when a complex value is finally requested.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import sympy
from sympy.ntheory.residue_ntheory import discrete_log

#: Best known progress towards the Ramanujan bound for Hecke eigenvalues.
THETA = Fraction(7, 64)


def e(x) -> complex:
    """exp(2*pi*i*x), with exact rational reduction mod 1 when x is a Fraction."""
    if isinstance(x, Fraction):
        x = x - math.floor(x)
        return cmath.exp(2j * math.pi * float(x))
    return cmath.exp(2j * math.pi * (x - math.floor(x)))


@dataclass(frozen=True)
class SquarefreeModulus:
    value: int
    prime_factors: tuple[int, ...]

    @classmethod
    def from_int(cls, n: int) -> "SquarefreeModulus":
        if n < 1:
            raise ValueError(f"modulus must be positive, got {n}")
        fac = sympy.factorint(n)
        if any(exp > 1 for exp in fac.values()):
            raise ValueError(f"{n} is not square-free")
        return cls(value=n, prime_factors=tuple(sorted(fac)))

    def __post_init__(self):
        prod = math.prod(self.prime_factors) if self.prime_factors else 1
        if prod != self.value:
            raise ValueError("prime_factors do not multiply to value")

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class DirichletCharacter:
    """Character mod a square-free N, given per odd prime p by the exponent m_p
    such that chi(g_p) = e(m_p/(p-1)) for a fixed primitive root g_p mod p."""

    modulus: SquarefreeModulus
    # map p -> exponent m_p in [0, p-1); p = 2 contributes nothing (trivial group)
    component_exponents: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for p in self.modulus.prime_factors:
            if p == 2:
                continue
            m = self.component_exponents.get(p, 0)
            if not 0 <= m < p - 1:
                raise ValueError(f"exponent for prime {p} out of range: {m}")

    @classmethod
    def trivial(cls, n: int) -> "DirichletCharacter":
        mod = n if isinstance(n, SquarefreeModulus) else SquarefreeModulus.from_int(n)
        return cls(modulus=mod, component_exponents={})

    @classmethod
    def quadratic(cls, p: int) -> "DirichletCharacter":
        """The real nontrivial (Legendre) character mod an odd prime p."""
        if p == 2 or not sympy.isprime(p):
            raise ValueError("quadratic character requires an odd prime modulus")
        return cls(modulus=SquarefreeModulus.from_int(p), component_exponents={p: (p - 1) // 2})

    # -- exact evaluation ------------------------------------------------

    def angle(self, a: int) -> Fraction | None:
        """Exact rational x in [0,1) with chi(a) = e(x), or None if gcd(a, N) > 1."""
        n = self.modulus.value
        a = a % n if n > 1 else 1
        if n > 1 and math.gcd(a, n) > 1:
            return None
        total = Fraction(0)
        for p in self.modulus.prime_factors:
            if p == 2:
                continue
            m = self.component_exponents.get(p, 0)
            if m == 0:
                continue
            g = sympy.primitive_root(p)
            idx = discrete_log(p, a % p, g)
            total += Fraction(m * idx, p - 1)
        return total - math.floor(total)

    def __call__(self, a: int) -> complex:
        x = self.angle(a)
        if x is None:
            return 0j
        if x == 0:
            return 1 + 0j
        if 2 * x == 1:
            return -1 + 0j
        return e(x)

    def conjugate(self) -> "DirichletCharacter":
        exps = {}
        for p in self.modulus.prime_factors:
            if p == 2:
                continue
            m = self.component_exponents.get(p, 0)
            exps[p] = (-m) % (p - 1)
        return DirichletCharacter(self.modulus, exps)

    def is_even(self) -> bool:
        """chi(-1) == 1; -1 has index (p-1)/2 at every odd prime component."""
        s = sum(self.component_exponents.get(p, 0) for p in self.modulus.prime_factors if p != 2)
        return s % 2 == 0

    def is_trivial(self) -> bool:
        return all(m == 0 for m in self.component_exponents.values())

    def restrict(self, divisor: int) -> "DirichletCharacter":
        """Component of the character living on a divisor of the modulus."""
        if self.modulus.value % divisor != 0:
            raise ValueError("not a divisor of the modulus")
        mod = SquarefreeModulus.from_int(divisor)
        exps = {p: self.component_exponents.get(p, 0) for p in mod.prime_factors if p != 2}
        return DirichletCharacter(mod, exps)


def enumerate_characters(n: int, even_only: bool = False):
    """All Dirichlet characters mod square-free n (optionally only even ones)."""
    mod = SquarefreeModulus.from_int(n)
    odd_primes = [p for p in mod.prime_factors if p != 2]

    def rec(i, exps):
        if i == len(odd_primes):
            chi = DirichletCharacter(mod, dict(exps))
            if not even_only or chi.is_even():
                yield chi
            return
        p = odd_primes[i]
        for m in range(p - 1):
            exps[p] = m
            yield from rec(i + 1, exps)
        del exps[p]

    yield from rec(0, {})


def char_eval(chi: DirichletCharacter, a: int) -> complex:
    return chi(a)


def mod_inverse(a: int, c: int) -> int:
    if c < 1:
        raise ValueError(f"modulus must be positive, got {c}")
    if math.gcd(a, c) != 1:
        raise ValueError(f"{a} is not invertible mod {c}")
    return pow(a, -1, c)


def p_adic_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    if p < 2 or not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def primes_in_interval(lo: float, hi: float, excluded_modulus: SquarefreeModulus | int = 1):
    """Sorted primes p in [lo, hi] with p not dividing the excluded modulus."""
    if not 2 <= lo <= hi:
        raise ValueError(f"need 2 <= lo <= hi, got [{lo}, {hi}]")
    n = int(excluded_modulus)
    start = math.ceil(lo)
    stop = math.floor(hi)
    return [p for p in sympy.primerange(start, stop + 1) if n % p != 0]
