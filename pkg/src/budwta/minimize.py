"""Minimal bu-det automaton construction and exact equivalence.

The pipeline: slim the automaton, build its syntactic quotient, pick a
scalar basis among the congruence classes of one representative monomial
per state, and read the minimal automaton off the basis.  A slim bu-det
automaton is minimal iff its state count equals the size of that basis.

Equivalence of two bu-det automata is decided exactly by a product
exploration that tracks, per reachable state pair, the ratio of the two
run weights; a ratio conflict or an observable mismatch on a pair whose
observations matter disproves equivalence.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Tuple

from . import automaton, congruence, scalar, semifield, terms
from .automaton import PreconditionError, TransKey, Wta, representative_trees
from .congruence import ClassRep, SyntacticQuotient
from .scalar import Monomial
from .semifield import Weight
from .terms import Tree

__all__ = [
    "representative_trees",
    "candidate_set",
    "scalar_basis",
    "build_wta_from_basis",
    "minimize",
    "is_minimal",
    "equivalent",
]


def candidate_set(
    a: Wta, qt: SyntacticQuotient
) -> List[Tuple[Tree, ClassRep]]:
    """One unit monomial class per state, deduplicated keep-first.

    Classes equal to the zero class (dead states) are dropped; they add
    nothing to the generated algebra.
    """
    reps = qt.rep_tree
    out: List[Tuple[Tree, ClassRep]] = []
    seen: List[ClassRep] = []
    for q in a.states:
        t = reps[q]
        cls = congruence.class_of(qt, Monomial(a.one(), t))
        if cls is None or cls in seen:
            continue
        seen.append(cls)
        out.append((t, cls))
    return out


def scalar_basis(
    a: Wta, qt: SyntacticQuotient
) -> List[Tuple[Tree, ClassRep]]:
    """Pair-independent subset of the candidate set (keep-first order)."""
    dep = congruence.dependency_oracle(qt)
    cands = candidate_set(a, qt)
    return scalar.pair_independent_subset(
        cands, lambda u, v: dep(u[1], v[1])
    )


def _basis_state_name(index: int, t: Tree) -> str:
    flat = terms.format_tree(t)
    for ch in "(),":
        flat = flat.replace(ch, "_")
    flat = flat.strip("_")
    while "__" in flat:
        flat = flat.replace("__", "_")
    return f"c{index}__{flat}"


def build_wta_from_basis(
    a: Wta, qt: SyntacticQuotient, basis: List[Tuple[Tree, ClassRep]]
) -> Wta:
    """The automaton whose states are the basis classes.

    A transition weight is the scalar by which the class of
    sigma(basis trees) decomposes over the basis; final weights are the
    recognized weights of the basis trees.  With an empty basis (zero
    language) the result is the canonical one-state automaton with no
    final weights.
    """
    alphabet = a.alphabet
    if not basis:
        t0 = next(terms.enumerate_trees(alphabet, 0))
        p = _basis_state_name(0, t0)
        delta: Dict[TransKey, Weight] = {}
        for sym in alphabet.symbols():
            k = alphabet.arity(sym)
            delta[((p,) * k, sym, p)] = a.one()
        return Wta(alphabet, (p,), a.kind, delta, {})

    names = [_basis_state_name(i, t) for i, (t, _) in enumerate(basis)]
    block_to_index = {cls[0]: i for i, (_, cls) in enumerate(basis)}
    delta = {}
    for sym in alphabet.symbols():
        k = alphabet.arity(sym)
        for combo in itertools.product(range(len(basis)), repeat=k):
            t = Tree(sym, tuple(basis[i][0] for i in combo))
            cls = congruence.class_of(qt, Monomial(a.one(), t))
            if cls is None:
                continue
            block, scal = cls
            j = block_to_index[block]
            _, (_, base_scal) = basis[j]
            w = scal.times(base_scal.reciprocal())
            key = (tuple(names[i] for i in combo), sym, names[j])
            delta[key] = w
    final: Dict[str, Weight] = {}
    for i, (t, _) in enumerate(basis):
        w = automaton.evaluate(a, t)
        if not w.is_zero():
            final[names[i]] = w
    return Wta(alphabet, tuple(names), a.kind, delta, final)


def minimize(a: Wta) -> Wta:
    """Minimal bu-det automaton with the same weighted tree language."""
    automaton._require_budet(a)
    s = automaton.slim(a)
    qt = congruence.build_syntactic_quotient(s)
    basis = scalar_basis(s, qt)
    return build_wta_from_basis(s, qt, basis)


def is_minimal(a: Wta) -> bool:
    """True iff the automaton is slim and as small as the scalar basis allows.

    The zero language needs one (dead) state, hence the max with 1.
    """
    automaton._require_budet(a)
    if not automaton.is_slim(a):
        return False
    qt = congruence.build_syntactic_quotient(a)
    basis = scalar_basis(a, qt)
    return len(a.states) == max(1, len(basis))


def degree(a: Wta) -> int:
    """Size of the scalar basis of the syntactic algebra of the language."""
    automaton._require_budet(a)
    s = automaton.slim(a)
    qt = congruence.build_syntactic_quotient(s)
    return len(scalar_basis(s, qt))


# --- exact equivalence ----------------------------------------------------


def equivalent(a: Wta, b: Wta) -> bool:
    """Exact equality of the two recognized weighted tree languages.

    Both automata must be bu-det, over the same alphabet and semifield.
    Runs a ratio-tracking product fixpoint over reachable state pairs;
    terminates after at most (|Q_A|+1)*(|Q_B|+1) pair discoveries.
    """
    if a.alphabet != b.alphabet:
        raise PreconditionError("automata use different alphabets")
    if a.kind != b.kind:
        raise PreconditionError("automata use different semifields")
    automaton._require_budet(a)
    automaton._require_budet(b)
    a = automaton.slim(a)
    b = automaton.slim(b)
    dead_a = automaton.dead_states(a)
    dead_b = automaton.dead_states(b)

    def observable_a(p: Optional[str]) -> bool:
        return p is not None and p not in dead_a

    def observable_b(q: Optional[str]) -> bool:
        return q is not None and q not in dead_b

    Pair = Tuple[Optional[str], Optional[str]]
    ratio: Dict[Pair, Optional[Weight]] = {}

    def succ(m: Wta, ws: Tuple[Optional[str], ...], sym: str):
        if any(p is None for p in ws):
            return None
        hits = m.targets(tuple(ws), sym)  # type: ignore[arg-type]
        return hits[0] if hits else None

    def admit(pair: Pair, rho: Optional[Weight]) -> bool:
        """Record a discovered pair; False means the languages differ."""
        p, q = pair
        oa, ob = observable_a(p), observable_b(q)
        if oa != ob:
            return False
        if not oa:
            # neither side can ever be observed from here
            if pair not in ratio:
                ratio[pair] = None
            return True
        assert rho is not None
        fa, fb = a.final_weight(p), b.final_weight(q)
        if fa.is_zero() != fb.is_zero():
            return False
        if not fa.is_zero() and rho != fb.times(fa.reciprocal()):
            return False
        if pair in ratio:
            return ratio[pair] == rho
        ratio[pair] = rho
        return True

    # seed with nullary symbols, then close under all symbols
    for sym in a.alphabet.nullary_symbols():
        ha, hb = succ(a, (), sym), succ(b, (), sym)
        pair = (ha[0] if ha else None, hb[0] if hb else None)
        if pair == (None, None):
            continue
        rho = None
        if ha is not None and hb is not None:
            rho = ha[1].times(hb[1].reciprocal())
        if not admit(pair, rho):
            return False

    while True:
        frontier = list(ratio.items())
        grew = False
        for sym in a.alphabet.symbols():
            k = a.alphabet.arity(sym)
            if k == 0:
                continue
            for combo in itertools.product(frontier, repeat=k):
                pairs = [pr for pr, _ in combo]
                ha = succ(a, tuple(p for p, _ in pairs), sym)
                hb = succ(b, tuple(q for _, q in pairs), sym)
                pair = (ha[0] if ha else None, hb[0] if hb else None)
                if pair == (None, None):
                    continue
                rho: Optional[Weight] = None
                if (
                    ha is not None
                    and hb is not None
                    and all(r is not None for _, r in combo)
                ):
                    rho = ha[1].times(hb[1].reciprocal())
                    for _, r in combo:
                        rho = rho.times(r)
                known = pair in ratio
                if not admit(pair, rho):
                    return False
                if not known:
                    grew = True
        if not grew:
            return True
