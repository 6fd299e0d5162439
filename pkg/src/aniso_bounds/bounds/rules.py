"""Rule table for explicit bounds, each answer tied to a citation anchor.

Queries whose hypotheses are not covered raise OutOfLedger; nothing is
extrapolated.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, fields

from ..errors import OutOfLedger
from ..glnz import UPSILON, gl_mod_order
from .citations import cite

KINDS = ("order", "exponent", "factor", "structure", "unbounded", "atlas_value",
         "prime_set", "exists_not_computed", "excluded")

CASES = ("torus", "severi_brauer", "severi_brauer_p", "quadric", "del_pezzo", "conic_bundle",
         "brauer_kernel", "torsion_primes", "minkowski_upsilon", "minkowski_mod3", "lag_constant")

BRAUER_KERNEL = {
    "product_with_conic": (2, "brauer_product"),
    "severi_brauer_surface": (3, "brauer_sb"),
    "product_of_conics": (4, "brauer_conics"),
    "quadric_pic_z": (1, "brauer_quadric"),
}

MAX_CONIC_FIBERS = 64


@dataclass(frozen=True)
class BoundQuery:
    case: str
    n: int | None = None
    char: int = 0
    perfect: bool = True
    has_point: bool = False
    division: bool = True
    degree: int | None = None
    m: int | None = None
    p: int | None = None
    n_prime: int | None = None
    surface: str | None = None
    dynkin: str | None = None
    r: int | None = None
    roots_of_unity: bool = True

    def to_json(self) -> dict:
        """Non-default fields only."""
        return {f.name: getattr(self, f.name) for f in fields(self)
                if f.name == "case" or getattr(self, f.name) != f.default}


@dataclass(frozen=True)
class BoundResult:
    kind: str
    value: object            # int, list of primes, dict for structures, or a symbol string
    citation: str
    chain: tuple = ()        # supporting anchors, in order of use
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown bound kind {self.kind!r}")
        if not self.citation:
            raise ValueError("every bound needs a citation")

    @property
    def bound(self):
        return self.value

    def to_json(self) -> dict:
        out = {"bound": self.value, "kind": self.kind, "citation": self.citation}
        if self.chain:
            out["chain"] = list(self.chain)
        out.update(self.extra)
        return out


def _need(cond, msg):
    if not cond:
        raise OutOfLedger(msg)


def _require_int(q, name, lo=None):
    v = getattr(q, name)
    _need(isinstance(v, int) and not isinstance(v, bool), f"{q.case} needs integer parameter {name}")
    _need(lo is None or v >= lo, f"{q.case} needs {name} >= {lo}")
    return v


def _check_char(c):
    _need(c == 0 or (c >= 2 and all(c % d for d in range(2, int(c ** 0.5) + 1))),
          "characteristic must be 0 or a prime")


def coprime_part(n: int, p: int) -> int:
    while p > 1 and n % p == 0:
        n //= p
    return n


# --- individual rules -----------------------------------------------------

def _torus(q):
    n = _require_int(q, "n", 1)
    _need(n in UPSILON, "torus bound needs the value of Upsilon(n), known here for n <= 3")
    _need(q.roots_of_unity, "torus bound assumes all roots of 1")
    return BoundResult("order", UPSILON[n] ** n, cite("torus"), (cite("torus"), cite(f"upsilon_{n}")),
                       {"upsilon": UPSILON[n]})


def _upsilon(q):
    n = _require_int(q, "n", 1)
    _need(n in UPSILON, "Upsilon(n) is tabulated for n <= 3 only")
    return BoundResult("atlas_value", UPSILON[n], cite(f"upsilon_{n}"))


def _mod3(q):
    n = _require_int(q, "n", 1)
    _need(n <= 6, "mod-3 bound tabulated for n <= 6")
    return BoundResult("order", gl_mod_order(n, 3), cite("upsilon_mod3"),
                       extra={"informational": True})


def _severi_brauer(q):
    n = _require_int(q, "n", 2)
    _check_char(q.char)
    _need(q.roots_of_unity, "Severi-Brauer bounds assume all roots of 1")
    _need(q.char == 0 or n % q.char, "characteristic divides n; use severi_brauer_p")
    if not q.division:
        return BoundResult("unbounded", None, cite("sb_split"))
    if n == 3 and q.char == 0 and not q.has_point:
        return BoundResult("order", 27, cite("sb_27"), (cite("sb_division"), cite("sb_27")),
                           {"exponent": 3})
    return BoundResult("order", n ** (2 * (n - 1)), cite("sb_division"), extra={"exponent": n})


def _severi_brauer_p(q):
    p = _require_int(q, "p", 2)
    _check_char(p)
    m = _require_int(q, "m", 1)
    if q.n_prime is not None:
        n_prime = _require_int(q, "n_prime", 1)
        _need(n_prime % p, "n' must be coprime to p")
        n = n_prime * p ** m
    else:
        n = _require_int(q, "n", 2)
        _need(n % p ** m == 0 and coprime_part(n, p) * p ** m == n,
              "n must equal n' p^m with n' coprime to p")
        n_prime = n // p ** m
    _need(q.division, "the structure result concerns division algebras")
    return BoundResult("structure", {"normal_coprime_order_max": n_prime ** (2 * (n - 1)),
                                     "abelian_p_exponent_max": p ** m},
                       cite("sb_p"), extra={"n": n, "n_prime": n_prime})


def _quadric(q):
    n = _require_int(q, "n", 3)
    _check_char(q.char)
    _need(q.roots_of_unity, "quadric bounds assume all roots of 1")
    _need(q.char != 2 or q.perfect, "non-perfect characteristic 2 is not covered")
    if q.has_point:
        return BoundResult("unbounded", None, cite("quadric_point"))
    if n == 4:
        return BoundResult("order", 32, cite("quadric_4"),
                           extra={"general_even_bound": 8 ** 3, "exponents": [2, 4]})
    if n % 2:
        return BoundResult("order", 2 ** (n - 1), cite("quadric_odd"), extra={"exponents": [2]})
    return BoundResult("order", 8 ** (n - 1), cite("quadric_even"), extra={"exponents": [2, 4]})


def _del_pezzo(q):
    d = _require_int(q, "degree", 1)
    _need(d <= 9, "del Pezzo degree is at most 9")
    _check_char(q.char)
    if d <= 5:
        if q.char == 0:
            return BoundResult("order", 648, cite("dp_low_char0"), (cite("dp_low_char0"),))
        return BoundResult("order", 696_729_600, cite("dp_low_any"))
    _need(q.roots_of_unity, "degree >= 6 bounds assume all roots of 1")
    if q.char in (2, 3) and not q.perfect:
        key = "dp_char2" if q.char == 2 else "dp_char3"
        return BoundResult("factor", 108 if q.char == 2 else 48, cite(key),
                           (cite("dp_432"), cite(key)))
    chain = (cite("dp_432"), cite("dp6")) if d == 6 else (cite("dp_432"),)
    return BoundResult("order", 432, cite("dp6") if d == 6 else cite("dp_432"), chain)


def _conic_bundle(q):
    m = _require_int(q, "m", 0)
    _need(m <= MAX_CONIC_FIBERS, f"m above {MAX_CONIC_FIBERS} not tabulated")
    _check_char(q.char)
    _need(q.roots_of_unity, "conic-bundle bound assumes all roots of 1")
    value = 16 * math.factorial(m)
    kind = "factor" if q.char == 2 else "order"
    return BoundResult(kind, value, cite("conic_bundle"))


def _brauer_kernel(q):
    _need(q.surface in BRAUER_KERNEL,
          f"surface must be one of {sorted(BRAUER_KERNEL)}")
    value, key = BRAUER_KERNEL[q.surface]
    return BoundResult("atlas_value", value, cite(key))


_DYNKIN = re.compile(r"^([A-G])_?(\d+)$")


def torsion_primes_for(dynkin: str) -> tuple[list[int], str]:
    m = _DYNKIN.match(str(dynkin).strip().upper())
    _need(m is not None, f"unrecognised Dynkin type {dynkin!r}")
    letter, rank = m.group(1), int(m.group(2))
    minimum = {"A": 1, "B": 2, "C": 3, "D": 4}
    if letter in minimum:
        _need(rank >= minimum[letter], f"type {letter} needs rank >= {minimum[letter]}")
        if letter in "AC":
            return [], "torsion_empty"
        return [2], "torsion_2"
    exceptional = {("G", 2): ([2], "torsion_2"), ("F", 4): ([2, 3], "torsion_23"),
                   ("E", 6): ([2, 3], "torsion_23"), ("E", 7): ([2, 3], "torsion_23"),
                   ("E", 8): ([2, 3, 5], "torsion_235")}
    _need((letter, rank) in exceptional, f"no simple type {letter}{rank}")
    return exceptional[(letter, rank)]


def _torsion_primes(q):
    primes, key = torsion_primes_for(q.dynkin)
    return BoundResult("prime_set", primes, cite(key))


def _lag_constant(q):
    r = _require_int(q, "r", 1)
    n = _require_int(q, "n", 1)
    return BoundResult("exists_not_computed", f"L({r},{n})", cite("lag"),
                       extra={"effective": False})


_RULES = {
    "torus": _torus, "severi_brauer": _severi_brauer, "severi_brauer_p": _severi_brauer_p,
    "quadric": _quadric, "del_pezzo": _del_pezzo, "conic_bundle": _conic_bundle,
    "brauer_kernel": _brauer_kernel, "torsion_primes": _torsion_primes,
    "minkowski_upsilon": _upsilon, "minkowski_mod3": _mod3, "lag_constant": _lag_constant,
}


def evaluate(q: BoundQuery) -> BoundResult:
    rule = _RULES.get(q.case)
    if rule is None:
        raise OutOfLedger(f"unknown case {q.case!r}")
    return rule(q)


# --- assembling the birational bound --------------------------------------

def assemble_bir_bound(surface: str, char: int = 0, perfect: bool = True,
                       degree: int | None = None, m: int | None = None) -> BoundResult:
    """Bound for a G-minimal model: a del Pezzo surface of given degree or a conic bundle."""
    _check_char(char)
    if surface == "del_pezzo":
        d = degree
        _need(isinstance(d, int) and 1 <= d <= 9, "del Pezzo degree must be in 1..9")
        if d == 9:
            if char == 3:
                return BoundResult("factor", 1, cite("dp_coprime_trivial"),
                                   (cite("sb_p"), cite("dp_coprime_trivial")))
            return BoundResult("order", 81, cite("dp9"), (cite("sb_division"), cite("dp9")))
        if d == 8:
            if char == 2 and not perfect:
                return BoundResult("factor", 1, cite("dp_coprime_trivial"),
                                   (cite("dp_coprime_trivial"),))
            return BoundResult("order", 32, cite("quadric_4"), (cite("quadric_4"),))
        if d == 7:
            return BoundResult("excluded", None, cite("dp7"))
        res = evaluate(BoundQuery("del_pezzo", degree=d, char=char, perfect=perfect))
        return BoundResult(res.kind, res.value, res.citation, res.chain or (res.citation,), res.extra)
    if surface == "conic_bundle":
        _need(isinstance(m, int) and 0 <= m <= MAX_CONIC_FIBERS,
              f"m must be in 0..{MAX_CONIC_FIBERS}")
        if m == 0:
            return BoundResult("excluded", None, cite("conic_bundle_product"),
                               (cite("conic_bundle_product"),))
        general = evaluate(BoundQuery("conic_bundle", m=m, char=char))
        chain = (cite("conic_bundle_small"), cite("conic_bundle"))
        if char == 2:
            # only |G|' is controlled: 1 for at most two degenerate fibres, m'! beyond
            value = 1 if m <= 2 else math.factorial(m)
            return BoundResult("factor", value, cite("conic_bundle") if m > 2 else cite("conic_bundle_small"),
                               chain, {"general_bound": general.value})
        value = 16 if m <= 2 else max(16, 4 * math.factorial(m))
        return BoundResult("order", value,
                           cite("conic_bundle_small") if m <= 2 else cite("conic_bundle"),
                           chain, {"general_bound": general.value})
    raise OutOfLedger(f"unknown surface kind {surface!r}")
