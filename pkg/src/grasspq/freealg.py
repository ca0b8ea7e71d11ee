"""Free associative Z2-graded algebra over RatFunc coefficients, with
oriented rewrite systems and normal forms.

Words are tuples of generator names; a polynomial maps words to nonzero
coefficients.  A presentation fixes a generator order and a confluent set
of oriented rules; normal_form rewrites until no rule left-hand side
occurs as a subword.  Local confluence is checked by resolving every
overlap ambiguity of rule left-hand sides (diamond lemma); the localized
presentation is finished by bounded completion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .coeff import ONE, RatFunc
from .errors import (
    CompletionOverflow,
    DegreeCapExceeded,
    GeneratorMismatch,
    InconsistentConvention,
    NonOrientable,
    SingularSpecialization,
    ZeroRelation,
)
from .reporting import Check, Report

Word = tuple[str, ...]

EVEN, ODD = 0, 1


@dataclass(frozen=True)
class Generator:
    name: str
    parity: int  # 0 even, 1 odd
    order_index: int


@dataclass(frozen=True)
class ReductionLimits:
    """Guard rails for rewriting: surface a runaway reduction instead of
    spinning."""

    max_word_length: int = 64
    max_steps: int = 2_000_000


class Poly:
    """Finite RatFunc-linear combination of words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, RatFunc] | None = None):
        clean: dict[Word, RatFunc] = {}
        if terms:
            for w, c in terms.items():
                if c:
                    clean[tuple(w)] = c
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> Poly:
        return cls()

    @classmethod
    def unit(cls, coeff: RatFunc = ONE) -> Poly:
        return cls({(): coeff})

    @classmethod
    def gen(cls, name: str, coeff: RatFunc = ONE) -> Poly:
        return cls({(name,): coeff})

    @classmethod
    def word(cls, *names: str, coeff: RatFunc = ONE) -> Poly:
        return cls({tuple(names): coeff})

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[w] == other.terms[w] for w in self.terms)

    __hash__ = None

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: Poly) -> Poly:
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            elif w in out:
                del out[w]
        res = Poly.__new__(Poly)
        res.terms = out
        return res

    def __neg__(self) -> Poly:
        res = Poly.__new__(Poly)
        res.terms = {w: -c for w, c in self.terms.items()}
        return res

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def scale(self, c: RatFunc) -> Poly:
        if not c:
            return Poly.zero()
        res = Poly.__new__(Poly)
        res.terms = {w: v * c for w, v in self.terms.items()}
        return res

    def __mul__(self, other: Poly) -> Poly:
        """Free product: bilinear word concatenation, no rewriting and no
        sign bookkeeping (Koszul signs live in the relations)."""
        out: dict[Word, RatFunc] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = out.get(w)
                s = c if s is None else s + c
                if s:
                    out[w] = s
                elif w in out:
                    del out[w]
        res = Poly.__new__(Poly)
        res.terms = out
        return res

    def letters(self) -> set[str]:
        return {g for w in self.terms for g in w}

    def max_word_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def is_homogeneous(self, degree: int) -> bool:
        return all(len(w) == degree for w in self.terms)

    def __repr__(self) -> str:
        if self.is_zero:
            return "Poly(0)"
        bits = [f"({c})*{'*'.join(w) if w else '1'}" for w, c in sorted(self.terms.items())]
        return "Poly(" + " + ".join(bits) + ")"


def free_mul(a: Poly, b: Poly) -> Poly:
    return a * b


@dataclass(frozen=True)
class RewriteRule:
    """Oriented relation lhs -> rhs; every rhs word is strictly below lhs
    in the presentation's monomial order."""

    lhs: Word
    rhs: Poly

    def as_relation(self) -> Poly:
        return Poly({self.lhs: ONE}) - self.rhs


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------
#
# "deglex": word length first, then the generator-index sequence.
#
# "invweight": net even weight first (letters listed in a presentation's
# `negative_weight` set count -1, other even letters +1, odd letters 0),
# then length, then the index sequence.  This is what lets the localized
# relation b*cinv -> cinv*b + (...)*alpha*delta*cinv^2 point downhill even
# though the trailing word is longer.


class Presentation:
    """Ordered graded generators plus an oriented, inter-reduced rule set."""

    def __init__(self, label: str, generators: Sequence[Generator],
                 rules: Sequence[RewriteRule], *, order: str = "deglex",
                 negative_weight: frozenset[str] = frozenset(),
                 inverses: Mapping[str, str] | None = None,
                 limits: ReductionLimits = ReductionLimits(),
                 completion_added: int = 0):
        self.label = label
        self.generators = tuple(generators)
        self.rules = tuple(rules)
        self.order = order
        self.negative_weight = frozenset(negative_weight)
        self.inverses = dict(inverses or {})
        self.limits = limits
        self.completion_added = completion_added
        self.by_name = {g.name: g for g in self.generators}
        if len(self.by_name) != len(self.generators):
            raise ValueError("duplicate generator names")
        self._index = {g.name: g.order_index for g in self.generators}
        self._parity = {g.name: g.parity for g in self.generators}
        self._by_first: dict[str, list[RewriteRule]] = {}
        for r in self.rules:
            self._by_first.setdefault(r.lhs[0], []).append(r)

    # -- order -------------------------------------------------------------

    def word_key(self, w: Word):
        idx = self._index
        if self.order == "deglex":
            return (len(w), tuple(idx[g] for g in w))
        weight = 0
        for g in w:
            if self._parity[g] == EVEN:
                weight += -1 if g in self.negative_weight else 1
        return (weight, len(w), tuple(idx[g] for g in w))

    def word_parity(self, w: Word) -> int:
        return sum(self._parity[g] for g in w) & 1

    def poly_parity(self, poly: Poly) -> int | None:
        """Common parity of all words, or None if mixed / zero."""
        parities = {self.word_parity(w) for w in poly.terms}
        if len(parities) == 1:
            return parities.pop()
        return None

    def validate(self, poly: Poly) -> None:
        unknown = poly.letters() - self.by_name.keys()
        if unknown:
            raise GeneratorMismatch(
                f"{sorted(unknown)} not declared in presentation {self.label!r}")

    # -- reduction ----------------------------------------------------------

    def find_reduction(self, w: Word, strategy: str = "leftmost"):
        # "oddfirst" collapses odd-letter pairs before touching even ones;
        # it is the safe alternate path for the localized system, where the
        # non-well-founded order lets a pure rightmost scan expand the
        # inverse frontier forever ahead of the nilpotent cancellations
        if strategy == "oddfirst":
            for i in range(len(w)):
                for rule in self._by_first.get(w[i], ()):
                    n = len(rule.lhs)
                    if w[i:i + n] == rule.lhs and any(
                            self._parity[g] for g in rule.lhs):
                        return i, rule
            strategy = "rightmost"
        positions = range(len(w)) if strategy == "leftmost" else range(len(w) - 1, -1, -1)
        for i in positions:
            for rule in self._by_first.get(w[i], ()):
                n = len(rule.lhs)
                if w[i:i + n] == rule.lhs:
                    return i, rule
        return None

    def sort_terms(self, poly: Poly):
        return sorted(poly.terms.items(), key=lambda item: self.word_key(item[0]), reverse=True)

    def relation_polys(self) -> list[Poly]:
        return [r.as_relation() for r in self.rules]

    def __repr__(self) -> str:
        return f"Presentation({self.label!r}, {len(self.generators)} gens, {len(self.rules)} rules)"


def normal_form(poly: Poly, pres: Presentation, *, strategy: str = "leftmost") -> Poly:
    """Reduce until no rule lhs occurs as a subword.  The result is the
    canonical representative modulo the two-sided ideal of relations."""
    pres.validate(poly)
    limits = pres.limits
    result: dict[Word, RatFunc] = {}
    pending = dict(poly.terms)
    steps = 0
    while pending:
        w, c = pending.popitem()
        if not c:
            continue
        hit = pres.find_reduction(w, strategy)
        if hit is None:
            s = result.get(w)
            s = c if s is None else s + c
            if s:
                result[w] = s
            elif w in result:
                del result[w]
            continue
        steps += 1
        if steps > limits.max_steps:
            raise DegreeCapExceeded(
                f"reduction in {pres.label!r} exceeded {limits.max_steps} steps")
        i, rule = hit
        prefix, suffix = w[:i], w[i + len(rule.lhs):]
        for rw, rc in rule.rhs.terms.items():
            nw = prefix + rw + suffix
            if len(nw) > limits.max_word_length:
                raise DegreeCapExceeded(
                    f"word of length {len(nw)} in {pres.label!r} exceeds the "
                    f"cap {limits.max_word_length}")
            nc = c * rc
            s = pending.get(nw)
            s = nc if s is None else s + nc
            if s:
                pending[nw] = s
            elif nw in pending:
                del pending[nw]
    return Poly(result)


def orient(relation: Poly, pres: Presentation) -> RewriteRule:
    """Turn relation = 0 into the rule (maximal word) -> (rest / leading
    coefficient)."""
    pres.validate(relation)
    if relation.is_zero:
        raise ZeroRelation("cannot orient the zero relation")
    ranked = pres.sort_terms(relation)
    lhs, lead = ranked[0]
    if len(ranked) > 1 and pres.word_key(ranked[1][0]) == pres.word_key(lhs):
        raise NonOrientable(f"maximal words tie in {relation!r}")
    if not lhs:
        raise NonOrientable("relation forces a scalar to vanish")
    rest = Poly({w: c for w, c in relation.terms.items() if w != lhs})
    rhs = rest.scale(-(lead.inv()))
    return RewriteRule(lhs, rhs)


# ---------------------------------------------------------------------------
# confluence: overlap ambiguities and bounded completion
# ---------------------------------------------------------------------------


def _ambiguities(rules: Sequence[RewriteRule]):
    """All overlap and inclusion ambiguities; yields
    (word, (pos1, rule1), (pos2, rule2))."""
    for r1, r2 in itertools.product(rules, repeat=2):
        l1, l2 = r1.lhs, r2.lhs
        # proper overlap: a suffix of l1 is a prefix of l2
        for k in range(1, min(len(l1), len(l2))):
            if l1[-k:] == l2[:k]:
                yield l1 + l2[k:], (0, r1), (len(l1) - k, r2)
        # inclusion: l2 occurs strictly inside l1
        if r1 is not r2 and len(l2) < len(l1):
            for i in range(len(l1) - len(l2) + 1):
                if l1[i:i + len(l2)] == l2:
                    yield l1, (0, r1), (i, r2)


def _apply_at(word: Word, pos: int, rule: RewriteRule) -> Poly:
    prefix, suffix = word[:pos], word[pos + len(rule.lhs):]
    return Poly({prefix + rw + suffix: rc for rw, rc in rule.rhs.terms.items()})


def overlap_check(pres: Presentation) -> Report:
    """Diamond-lemma local confluence: both reductions of every ambiguity
    must share a normal form."""
    report = Report(suite=f"confluence:{pres.label}")
    seen = set()
    for word, (i1, r1), (i2, r2) in _ambiguities(pres.rules):
        key = (word, i1, r1.lhs, i2, r2.lhs)
        if key in seen:
            continue
        seen.add(key)
        a = normal_form(_apply_at(word, i1, r1), pres)
        b = normal_form(_apply_at(word, i2, r2), pres)
        diff = a - b
        report.add(Check(
            name=f"overlap:{'*'.join(word)}@{i2}",
            status="pass" if diff.is_zero else "fail",
            residual=None if diff.is_zero else format_poly(diff, pres),
            paper_ref="both reductions of a shared subword must agree",
        ))
    if not pres.rules:
        report.add(Check(name="overlap:none", status="pass",
                         paper_ref="empty rule set is vacuously confluent"))
    report.finish()
    return report


class _System:
    """Mutable rule set used while building a presentation."""

    def __init__(self, skeleton: Presentation):
        self.skeleton = skeleton  # carries generators/order, no rules
        self.rules: list[RewriteRule] = []

    def snapshot(self, completion_added: int = 0) -> Presentation:
        sk = self.skeleton
        return Presentation(sk.label, sk.generators, tuple(self.rules),
                            order=sk.order, negative_weight=sk.negative_weight,
                            inverses=sk.inverses, limits=sk.limits,
                            completion_added=completion_added)

    def reduce(self, poly: Poly) -> Poly:
        return normal_form(poly, self.snapshot())

    def add_relation(self, rel: Poly) -> bool:
        nf = self.reduce(rel)
        if nf.is_zero:
            return False
        self.rules.append(orient(nf, self.skeleton))
        return True

    def interreduce(self) -> None:
        changed = True
        while changed:
            changed = False
            for i in range(len(self.rules)):
                rule = self.rules[i]
                others = self.rules[:i] + self.rules[i + 1:]
                sys_others = _System(self.skeleton)
                sys_others.rules = others
                rel = sys_others.reduce(rule.as_relation())
                if rel.is_zero:
                    self.rules = others
                    changed = True
                    break
                new_rule = orient(rel, self.skeleton)
                if new_rule.lhs != rule.lhs or not (new_rule.rhs - rule.rhs).is_zero:
                    self.rules[i] = new_rule
                    changed = True
                    break
            if not changed:
                changed = self._normalize_rhs()

    def _normalize_rhs(self) -> bool:
        """Reduce every rule's rhs with the full system, the rule itself
        included.  A self-embedded rhs (its own lhs as a subword, possible
        under the weighted orders) would otherwise let one reduction
        strategy expand forever."""
        changed = False
        full = self.snapshot()
        for i, rule in enumerate(self.rules):
            nf = normal_form(rule.rhs, full)
            if not (nf - rule.rhs).is_zero:
                self.rules[i] = RewriteRule(rule.lhs, nf)
                changed = True
        return changed


def build_presentation(label: str, gens: Sequence[tuple[str, int]],
                       relations: Iterable[Poly], *, order: str = "deglex",
                       negative_weight: Iterable[str] = (),
                       inverses: Mapping[str, str] | None = None,
                       complete: bool = True, max_rules: int = 64,
                       limits: ReductionLimits = ReductionLimits()) -> Presentation:
    """Orient, inter-reduce and (boundedly) complete a relation set."""
    generators = tuple(Generator(n, p, i) for i, (n, p) in enumerate(gens))
    skeleton = Presentation(label, generators, (), order=order,
                            negative_weight=frozenset(negative_weight),
                            inverses=inverses, limits=limits)
    sys = _System(skeleton)
    for rel in relations:
        sys.add_relation(rel)
    sys.interreduce()
    added = 0
    if complete:
        while True:
            pres = sys.snapshot()
            # fair strategy: gather every unresolved ambiguity this round and
            # install the one with the smallest leading word, so short rules
            # form before their longer consequences can cascade
            candidates: list[Poly] = []
            for word, (i1, r1), (i2, r2) in _ambiguities(pres.rules):
                a = normal_form(_apply_at(word, i1, r1), pres)
                b = normal_form(_apply_at(word, i2, r2), pres)
                diff = a - b
                if diff.is_zero:
                    continue
                if not any((diff - seen).is_zero or (diff + seen).is_zero
                           for seen in candidates):
                    candidates.append(diff)
            if not candidates:
                break
            if len(sys.rules) >= max_rules:
                raise CompletionOverflow(
                    f"completion of {label!r} exceeded {max_rules} rules")
            def _priority(d: Poly):
                lead = pres.sort_terms(d)[0][0]
                return (len(lead), pres.word_key(lead))

            best = min(candidates, key=_priority)
            sys.add_relation(best)
            sys.interreduce()
            added += 1
    return sys.snapshot(completion_added=added)


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

PRESET_NAMES = ("gr2", "gr11", "gr11_localized", "gr11_inverse",
                "plane_p20", "plane_q02", "plane_p11", "plane_q11_dual")


def _gr2_relations(pp: RatFunc, qq: RatFunc) -> list[Poly]:
    w = Poly.word
    return [
        w("alpha", "beta") + w("beta", "alpha", coeff=pp ** -1),
        w("alpha", "gamma") + w("gamma", "alpha", coeff=qq ** -1),
        w("gamma", "delta") + w("delta", "gamma", coeff=pp ** -1),
        w("beta", "delta") + w("delta", "beta", coeff=qq ** -1),
        w("alpha", "delta") + w("delta", "alpha"),
        w("alpha", "alpha"),
        w("beta", "beta"),
        w("gamma", "gamma"),
        w("delta", "delta"),
        w("beta", "gamma") + w("gamma", "beta", coeff=pp * qq ** -1)
        - w("delta", "alpha", coeff=pp - qq ** -1),
    ]


def _gr11_relations(pp: RatFunc, qq: RatFunc) -> list[Poly]:
    w = Poly.word
    return [
        w("alpha", "b") - w("b", "alpha", coeff=pp ** -1),
        w("alpha", "c") - w("c", "alpha", coeff=qq ** -1),
        w("delta", "b") - w("b", "delta", coeff=pp ** -1),
        w("delta", "c") - w("c", "delta", coeff=qq ** -1),
        w("alpha", "delta") + w("delta", "alpha"),
        w("alpha", "alpha"),
        w("delta", "delta"),
        w("b", "c") - w("c", "b", coeff=pp * qq ** -1)
        - w("delta", "alpha", coeff=pp - qq ** -1),
    ]


def _localized_relations(pp: RatFunc, qq: RatFunc) -> list[Poly]:
    w = Poly.word
    unit = Poly.unit()
    rels = _gr11_relations(pp, qq) + [
        w("b", "binv") - unit,
        w("binv", "b") - unit,
        w("c", "cinv") - unit,
        w("cinv", "c") - unit,
    ]
    # commutation of the adjoined inverses with the odd generators, obtained
    # by conjugating the base relations; the even-even rules fall out of
    # completion.
    rels += [
        w("binv", "alpha") - w("alpha", "binv", coeff=pp ** -1),
        w("cinv", "alpha") - w("alpha", "cinv", coeff=qq ** -1),
        w("binv", "delta") - w("delta", "binv", coeff=pp ** -1),
        w("cinv", "delta") - w("delta", "cinv", coeff=qq ** -1),
    ]
    return rels


def build_gr2(pp: RatFunc, qq: RatFunc, label: str = "gr2") -> Presentation:
    gens = [("alpha", ODD), ("delta", ODD), ("beta", ODD), ("gamma", ODD)]
    return build_presentation(label, gens, _gr2_relations(pp, qq))


def build_gr11(pp: RatFunc, qq: RatFunc, label: str = "gr11") -> Presentation:
    gens = [("alpha", ODD), ("delta", ODD), ("b", EVEN), ("c", EVEN)]
    return build_presentation(label, gens, _gr11_relations(pp, qq))


def build_gr11_localized(pp: RatFunc, qq: RatFunc,
                         label: str = "gr11_localized") -> Presentation:
    # each inverse sits right next to its partner in the order, so that
    # b*binv / c*cinv pairs become adjacent in normal words and cancel
    # locally; separating them (binv < cinv < b < c) provably needs an
    # infinite rule family in the alpha*delta corner
    gens = [("alpha", ODD), ("delta", ODD), ("binv", EVEN), ("b", EVEN),
            ("cinv", EVEN), ("c", EVEN)]
    # inverse-cluster words balloon transiently before the nilpotent odd
    # pairs kill them, so this preset gets extra headroom over the default
    return build_presentation(label, gens, _localized_relations(pp, qq),
                              order="invweight",
                              negative_weight=("binv", "cinv"),
                              inverses={"b": "binv", "c": "cinv"},
                              limits=ReductionLimits(max_word_length=256))


def _free_gens(names_parities) -> Presentation:
    generators = tuple(Generator(n, p, i) for i, (n, p) in enumerate(names_parities))
    return Presentation("free", generators, ())


@lru_cache(maxsize=None)
def preset(name: str) -> Presentation:
    from .coeff import P, Q

    if name == "gr2":
        return build_gr2(P, Q)
    if name == "gr11":
        return build_gr11(P, Q)
    if name == "gr11_localized":
        return build_gr11_localized(P, Q)
    if name == "gr11_inverse":
        return build_gr11(P ** -1, Q ** -1, label="gr11_inverse")
    w = Poly.word
    if name == "plane_p20":
        return build_presentation("plane_p20", [("x", EVEN), ("y", EVEN)],
                                  [w("x", "y") - w("y", "x", coeff=P)])
    if name == "plane_q02":
        return build_presentation("plane_q02", [("xi", ODD), ("eta", ODD)],
                                  [w("xi", "xi"), w("eta", "eta"),
                                   w("eta", "xi") + w("xi", "eta", coeff=Q)])
    if name == "plane_p11":
        return build_presentation("plane_p11", [("x", EVEN), ("xi", ODD)],
                                  [w("x", "xi") - w("xi", "x", coeff=P),
                                   w("xi", "xi")])
    if name == "plane_q11_dual":
        return build_presentation("plane_q11_dual", [("eta", ODD), ("y", EVEN)],
                                  [w("eta", "eta"),
                                   w("eta", "y") - w("y", "eta", coeff=Q ** -1)])
    raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")


def free_algebra_on(pres: Presentation) -> Presentation:
    """Same generators, no relations: the ambient free algebra."""
    return Presentation(f"free({pres.label})", pres.generators, ())


# ---------------------------------------------------------------------------
# irreducible words
# ---------------------------------------------------------------------------


def is_irreducible(word: Word, pres: Presentation) -> bool:
    return pres.find_reduction(word) is None


def irreducible_words(pres: Presentation, max_length: int) -> list[Word]:
    names = [g.name for g in pres.generators]
    out: list[Word] = []
    for n in range(max_length + 1):
        for combo in itertools.product(names, repeat=n):
            if is_irreducible(combo, pres):
                out.append(combo)
    return out


# ---------------------------------------------------------------------------
# endomorphism-derived relations
# ---------------------------------------------------------------------------

ENTRY_LAYOUTS = {
    "all_odd": (("alpha", ODD), ("beta", ODD), ("gamma", ODD), ("delta", ODD)),
    "diag_odd": (("alpha", ODD), ("b", EVEN), ("c", EVEN), ("delta", ODD)),
    "all_even": (("a", EVEN), ("b", EVEN), ("c", EVEN), ("d", EVEN)),
}


def derive_relations(source_plane: Presentation, target_plane: Presentation,
                     entry_parity: str = "all_odd",
                     convention: str = "koszul") -> list[Poly]:
    """Quadratic relations a 2x2 matrix of fresh entries must satisfy for
    the transformed source coordinates to obey the target plane's
    relations.

    The entries (anti-)commute with the source coordinates according to
    `convention`: "koszul" uses the parity product sign, "commute" uses no
    signs.
    """
    if convention not in ("koszul", "commute"):
        raise ValueError(f"unknown convention {convention!r}")
    if len(source_plane.generators) != 2 or len(target_plane.generators) != 2:
        raise ValueError("planes must be two-dimensional")
    entries = ENTRY_LAYOUTS[entry_parity]
    entry_names = [n for n, _ in entries]
    coord_names = [g.name for g in source_plane.generators]
    if set(entry_names) & set(coord_names):
        raise GeneratorMismatch("matrix entries must be fresh generators")

    gens = list(entries) + [(g.name, g.parity) for g in source_plane.generators]
    w = Poly.word
    rels = [Poly({w_: c for w_, c in r.as_relation().terms.items()})
            for r in source_plane.rules]
    for coord in source_plane.generators:
        for ename, eparity in entries:
            if convention == "koszul" and coord.parity and eparity:
                sign = -ONE
            else:
                sign = ONE
            rels.append(w(coord.name, ename) - w(ename, coord.name, coeff=sign))
    combined = build_presentation(
        f"derive({source_plane.label}->{target_plane.label})", gens, rels)

    # transformed coordinates: row i of the entry matrix applied to the
    # source coordinate column vector
    matrix = [[entry_names[0], entry_names[1]], [entry_names[2], entry_names[3]]]
    transformed = [
        Poly.word(matrix[i][0], coord_names[0]) + Poly.word(matrix[i][1], coord_names[1])
        for i in range(2)
    ]

    derived: list[Poly] = []
    for rule in target_plane.rules:
        relation = rule.as_relation()
        image = Poly.zero()
        for word, coeff in relation.terms.items():
            factor = Poly.unit(coeff)
            for letter in word:
                slot = [g.name for g in target_plane.generators].index(letter)
                factor = factor * transformed[slot]
            image = image + factor
        nf = normal_form(image, combined)
        by_coord: dict[Word, dict[Word, RatFunc]] = {}
        for word, coeff in nf.terms.items():
            head = tuple(g for g in word if g in set(entry_names))
            tail = tuple(g for g in word if g not in set(entry_names))
            if head + tail != word:
                raise InconsistentConvention(
                    "normal form did not separate entries from coordinates")
            by_coord.setdefault(tail, {})[head] = coeff
        for tail, entry_terms in sorted(by_coord.items()):
            poly = Poly(entry_terms)
            if poly.is_zero:
                continue
            if () in poly.terms:
                raise InconsistentConvention("constraints force 1 = 0")
            if not any((poly - seen).is_zero for seen in derived):
                derived.append(poly)
    return derived


# ---------------------------------------------------------------------------
# specialization
# ---------------------------------------------------------------------------


def specialize(poly: Poly, assignment: Mapping[str, RatFunc]) -> Poly:
    """Substitute rational functions for p and/or q in every coefficient."""
    unknown = set(assignment) - {"p", "q"}
    if unknown:
        raise ValueError(f"can only assign p and q, got {sorted(unknown)}")
    pv = assignment.get("p")
    qv = assignment.get("q")
    out: dict[Word, RatFunc] = {}
    for w, c in poly.terms.items():
        s = c.substitute(pv, qv)
        if s:
            out[w] = s
    return Poly(out)


def specialize_presentation(pres: Presentation,
                            assignment: Mapping[str, RatFunc]) -> Presentation:
    """Specialize every rule; leading coefficients are monic so only a
    vanishing rhs denominator can fail."""
    rules = []
    for rule in pres.rules:
        rel = specialize(rule.as_relation(), assignment)
        if rule.lhs not in rel.terms:
            raise SingularSpecialization(
                f"specialization kills the leading term of {rule.lhs}")
        rules.append(orient(rel, pres))
    return Presentation(pres.label + "|specialized", pres.generators, rules,
                        order=pres.order, negative_weight=pres.negative_weight,
                        inverses=pres.inverses, limits=pres.limits)


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------


def _word_str(word: Word) -> str:
    if not word:
        return "1"
    pieces = []
    for name, run in itertools.groupby(word):
        k = len(tuple(run))
        pieces.append(name if k == 1 else f"{name}^{k}")
    return "*".join(pieces)


def _coeff_str(c: RatFunc) -> tuple[str, bool]:
    """Canonical coefficient text and whether it is sign-splittable
    (a bare monomial whose leading minus can be pulled out)."""
    simple = (len(c.den.terms) == 1 and (0, 0) in c.den.terms
              and c.den.terms[(0, 0)] == 1 and len(c.num.terms) == 1)
    return str(c), simple


def format_poly(poly: Poly, pres: Presentation) -> str:
    """Single-line canonical form: terms in descending monomial order,
    coefficients in canonical fraction form.  Round-trips through the CLI
    parser."""
    if poly.is_zero:
        return "0"
    out = []
    for word, coeff in pres.sort_terms(poly):
        text, simple = _coeff_str(coeff)
        if simple:
            negative = text.startswith("-")
            mag = text[1:] if negative else text
            if word and mag == "1":
                body = _word_str(word)
            elif word:
                body = f"{mag}*{_word_str(word)}"
            else:
                body = mag
            if not out:
                out.append("-" + body if negative else body)
            else:
                out.append((" - " if negative else " + ") + body)
        else:
            body = f"({text})"
            if word:
                body += f"*{_word_str(word)}"
            out.append(body if not out else " + " + body)
    return "".join(out)
