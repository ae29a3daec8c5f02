"""Sparse multivariate polynomials and polynomial maps.

Objects of the ambient category are finite powers of the base line; a
morphism m -> n is a tuple of n polynomials in m variables.  Composition is
written in diagrammatic order throughout: ``polymap_compose(f, g)`` is
"f then g".

Terms are kept in graded-lexicographic order (total degree first, then the
exponent vector, both descending), so structural equality of the stored
tuples coincides with mathematical equality over the chosen semiring.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Dict, Iterable, Sequence, Tuple

from . import scalars
from .errors import DimensionMismatch

Exponent = Tuple[int, ...]


def _grlex_key(ev: Exponent):
    return (sum(ev), ev)


def _canonical(nvars: int, acc: Dict[Exponent, object]) -> tuple:
    terms = [(ev, c) for ev, c in acc.items() if c != 0]
    for ev, _ in terms:
        if len(ev) != nvars:
            raise DimensionMismatch(f"exponent vector {ev} does not have {nvars} entries")
    terms.sort(key=lambda t: _grlex_key(t[0]), reverse=True)
    return tuple(terms)


@dataclass(frozen=True)
class Poly:
    nvars: int
    terms: tuple  # ((exponent, coefficient), ...) graded-lex descending
    mode: str

    @staticmethod
    def from_terms(nvars: int, items: Iterable[Tuple[Exponent, object]], mode: str) -> "Poly":
        scalars.check_mode(mode)
        acc: Dict[Exponent, object] = {}
        for ev, c in items:
            ev = tuple(ev)
            c = scalars.coerce(mode, c)
            acc[ev] = acc.get(ev, 0) + c
        return Poly(nvars, _canonical(nvars, acc), mode)

    @staticmethod
    def zero(nvars: int, mode: str) -> "Poly":
        scalars.check_mode(mode)
        return Poly(nvars, (), mode)

    @staticmethod
    def constant(nvars: int, value, mode: str) -> "Poly":
        return Poly.from_terms(nvars, [((0,) * nvars, value)], mode)

    @staticmethod
    def variable(nvars: int, i: int, mode: str) -> "Poly":
        if not 0 <= i < nvars:
            raise DimensionMismatch(f"variable index {i} out of range for {nvars} variables")
        ev = tuple(1 if j == i else 0 for j in range(nvars))
        return Poly.from_terms(nvars, [(ev, 1)], mode)

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(ev) for ev, _ in self.terms), default=0)

    def __add__(self, other: "Poly") -> "Poly":
        return poly_add(self, other)

    def __mul__(self, other: "Poly") -> "Poly":
        return poly_mul(self, other)

    def __str__(self) -> str:
        return poly_to_str(self)


def _check_same_shape(a: Poly, b: Poly):
    if a.nvars != b.nvars:
        raise DimensionMismatch(f"polynomials over {a.nvars} and {b.nvars} variables")
    if a.mode != b.mode:
        raise DimensionMismatch(f"mixed scalar modes {a.mode!r} and {b.mode!r}")


def poly_add(a: Poly, b: Poly) -> Poly:
    _check_same_shape(a, b)
    acc = dict(a.terms)
    for ev, c in b.terms:
        acc[ev] = acc.get(ev, 0) + c
    return Poly(a.nvars, _canonical(a.nvars, acc), a.mode)


def poly_mul(a: Poly, b: Poly) -> Poly:
    _check_same_shape(a, b)
    acc: Dict[Exponent, object] = {}
    for ev1, c1 in a.terms:
        for ev2, c2 in b.terms:
            ev = tuple(e1 + e2 for e1, e2 in zip(ev1, ev2))
            acc[ev] = acc.get(ev, 0) + c1 * c2
    return Poly(a.nvars, _canonical(a.nvars, acc), a.mode)


def poly_scale(a: Poly, value) -> Poly:
    c = scalars.coerce(a.mode, value)
    return Poly.from_terms(a.nvars, [(ev, c * coeff) for ev, coeff in a.terms], a.mode)


def partial_derivative(p: Poly, i: int) -> Poly:
    """Formal partial derivative; the k*c coefficients stay inside either semiring."""
    if not 0 <= i < p.nvars:
        raise DimensionMismatch(f"variable index {i} out of range for {p.nvars} variables")
    items = []
    for ev, c in p.terms:
        if ev[i] == 0:
            continue
        dev = tuple(e - 1 if j == i else e for j, e in enumerate(ev))
        items.append((dev, c * ev[i]))
    return Poly.from_terms(p.nvars, items, p.mode)


def poly_shift_vars(p: Poly, offset: int, new_nvars: int) -> Poly:
    """Reindex variable i to variable i + offset inside a wider variable block."""
    if offset < 0 or p.nvars + offset > new_nvars:
        raise DimensionMismatch("shifted variables fall outside the new block")
    items = [
        ((0,) * offset + ev + (0,) * (new_nvars - p.nvars - offset), c)
        for ev, c in p.terms
    ]
    return Poly.from_terms(new_nvars, items, p.mode)


def poly_subst(p: Poly, args: Sequence[Poly]) -> Poly:
    """Substitute args[i] for variable i.  All args share a domain width."""
    if len(args) != p.nvars:
        raise DimensionMismatch(f"{p.nvars} variables but {len(args)} substitutions")
    if p.nvars == 0:
        widths = 0
    else:
        widths = args[0].nvars
        for q in args:
            if q.nvars != widths or q.mode != p.mode:
                raise DimensionMismatch("substitution arguments disagree in shape")
    out = Poly.zero(widths if p.nvars else 0, p.mode)
    powers: Dict[Tuple[int, int], Poly] = {}

    def power(i: int, e: int) -> Poly:
        if e == 0:
            return Poly.constant(args[i].nvars, 1, p.mode)
        got = powers.get((i, e))
        if got is None:
            got = poly_mul(power(i, e - 1), args[i]) if e > 1 else args[i]
            powers[(i, e)] = got
        return got

    for ev, c in p.terms:
        term = Poly.constant(widths if p.nvars else 0, c, p.mode)
        for i, e in enumerate(ev):
            if e:
                term = poly_mul(term, power(i, e))
        out = poly_add(out, term)
    return out


def eval_poly(p: Poly, point: Sequence) -> object:
    """Exact evaluation at a tuple of scalars."""
    if len(point) != p.nvars:
        raise DimensionMismatch(f"{p.nvars} variables but point of length {len(point)}")
    vals = [scalars.coerce(p.mode, v) for v in point]
    total = scalars.coerce(p.mode, 0)
    for ev, c in p.terms:
        term = c
        for v, e in zip(vals, ev):
            for _ in range(e):
                term = term * v
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Polynomial maps


@dataclass(frozen=True)
class PolyMap:
    dom: int
    cod: int
    components: Tuple[Poly, ...]
    mode: str

    def __post_init__(self):
        if len(self.components) != self.cod:
            raise DimensionMismatch(f"{self.cod} components expected, got {len(self.components)}")
        for comp in self.components:
            if comp.nvars != self.dom or comp.mode != self.mode:
                raise DimensionMismatch("component does not match the map's domain or mode")

    def __str__(self) -> str:
        return polymap_to_str(self)


def polymap(components: Sequence[Poly], dom: int, mode: str) -> PolyMap:
    return PolyMap(dom, len(components), tuple(components), mode)


def identity_map(m: int, mode: str) -> PolyMap:
    return PolyMap(m, m, tuple(Poly.variable(m, i, mode) for i in range(m)), mode)


def zero_map(dom: int, cod: int, mode: str) -> PolyMap:
    return PolyMap(dom, cod, tuple(Poly.zero(dom, mode) for _ in range(cod)), mode)


def constant_map(dom: int, values: Sequence, mode: str) -> PolyMap:
    comps = tuple(Poly.constant(dom, v, mode) for v in values)
    return PolyMap(dom, len(comps), comps, mode)


def terminal_map(dom: int, mode: str) -> PolyMap:
    """The unique map to the 0-dimensional (terminal) object."""
    return PolyMap(dom, 0, (), mode)


def polymap_compose(f: PolyMap, g: PolyMap) -> PolyMap:
    """Diagrammatic composite f;g (apply f first)."""
    if f.cod != g.dom:
        raise DimensionMismatch(f"cannot compose cod {f.cod} with dom {g.dom}")
    if f.mode != g.mode:
        raise DimensionMismatch(f"mixed scalar modes {f.mode!r} and {g.mode!r}")
    comps = tuple(poly_subst(comp, f.components) for comp in g.components)
    # poly_subst of a 0-variable polynomial keeps nvars 0; re-widen constants
    if g.dom == 0:
        comps = tuple(
            Poly.from_terms(f.dom, [((0,) * f.dom, c) for _, c in comp.terms], f.mode)
            for comp in comps
        )
    return PolyMap(f.dom, g.cod, comps, f.mode)


def polymap_pair(*maps: PolyMap) -> PolyMap:
    """<f, g, ...>: concatenate components over a common domain."""
    if not maps:
        raise DimensionMismatch("pairing needs at least one map")
    dom, mode = maps[0].dom, maps[0].mode
    for f in maps:
        if f.dom != dom or f.mode != mode:
            raise DimensionMismatch("paired maps must share a domain and mode")
    comps = tuple(c for f in maps for c in f.components)
    return PolyMap(dom, len(comps), comps, mode)


def polymap_proj(dom: int, lo: int, hi: int, mode: str) -> PolyMap:
    """Coordinate-slice projection onto [lo, hi)."""
    if not 0 <= lo <= hi <= dom:
        raise DimensionMismatch(f"slice [{lo},{hi}) invalid for dimension {dom}")
    comps = tuple(Poly.variable(dom, i, mode) for i in range(lo, hi))
    return PolyMap(dom, hi - lo, comps, mode)


def polymap_product(f: PolyMap, g: PolyMap) -> PolyMap:
    """f x g on the concatenated domain."""
    if f.mode != g.mode:
        raise DimensionMismatch(f"mixed scalar modes {f.mode!r} and {g.mode!r}")
    dom = f.dom + g.dom
    comps = [poly_shift_vars(c, 0, dom) for c in f.components]
    comps += [poly_shift_vars(c, f.dom, dom) for c in g.components]
    return PolyMap(dom, f.cod + g.cod, tuple(comps), f.mode)


def polymap_add(f: PolyMap, g: PolyMap) -> PolyMap:
    """Pointwise sum of parallel maps (the left-additive structure)."""
    if f.dom != g.dom or f.cod != g.cod:
        raise DimensionMismatch("pointwise sum needs parallel maps")
    comps = tuple(poly_add(a, b) for a, b in zip(f.components, g.components))
    return PolyMap(f.dom, f.cod, comps, f.mode)


def polymap_equal(f: PolyMap, g: PolyMap) -> bool:
    return (
        f.dom == g.dom
        and f.cod == g.cod
        and f.mode == g.mode
        and f.components == g.components
    )


def eval_polymap(f: PolyMap, point: Sequence) -> tuple:
    return tuple(eval_poly(c, point) for c in f.components)


def permutation_map(dom: int, images: Sequence[int], mode: str) -> PolyMap:
    """The map whose i-th output is the images[i]-th input coordinate."""
    comps = tuple(Poly.variable(dom, j, mode) for j in images)
    return PolyMap(dom, len(comps), comps, mode)


# ---------------------------------------------------------------------------
# Printing (canonical form: graded-lex term order, explicit *)


def poly_to_str(p: Poly, var_names: Sequence[str] | None = None, display_order: Sequence[int] | None = None) -> str:
    if var_names is None:
        var_names = [f"x{i}" for i in range(p.nvars)]
    order = list(display_order) if display_order is not None else list(range(p.nvars))
    if not p.terms:
        return "0"
    pieces = []
    for ev, c in p.terms:
        factors = []
        for i in order:
            e = ev[i]
            if e == 1:
                factors.append(var_names[i])
            elif e > 1:
                factors.append(f"{var_names[i]}^{e}")
        mag = scalars.format_scalar(abs(c))
        if not factors:
            body = mag
        elif mag == "1":
            body = "*".join(factors)
        else:
            body = "*".join([mag] + factors)
        pieces.append((c < 0, body))
    first_neg, first_body = pieces[0]
    out = ("-" + first_body) if first_neg else first_body
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def polymap_to_str(f: PolyMap, var_names: Sequence[str] | None = None, display_order: Sequence[int] | None = None) -> str:
    return "; ".join(poly_to_str(c, var_names, display_order) for c in f.components)


# ---------------------------------------------------------------------------
# Seeded random generation


def random_poly(nvars: int, max_degree: int, coeff_bound: int, rng: Random, mode: str, max_terms: int = 3) -> Poly:
    items = []
    for _ in range(rng.randint(1, max_terms)):
        degree = rng.randint(0, max_degree)
        ev = [0] * nvars
        if nvars:
            for _ in range(degree):
                ev[rng.randrange(nvars)] += 1
        items.append((tuple(ev), scalars.random_scalar(mode, rng, coeff_bound)))
    return Poly.from_terms(nvars, items, mode)


def random_polymap(dom: int, cod: int, max_degree: int, coeff_bound: int, seed, mode: str = scalars.RATIONAL) -> PolyMap:
    """Deterministic for a fixed seed; monomial degrees <= max_degree."""
    if max_degree < 0 or coeff_bound <= 0:
        raise ValueError("bounds must be positive")
    rng = seed if isinstance(seed, Random) else Random(seed)
    comps = tuple(random_poly(dom, max_degree, coeff_bound, rng, mode) for _ in range(cod))
    return PolyMap(dom, cod, comps, mode)
