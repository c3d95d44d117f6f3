"""Closed-form dimension results, pattern witnesses and classifications.

Everything in this module has an independent route through the generic
solver; tests cross-check the two.  The radical square zero dimension is
a quotient-rank formula over a formal span of arrow/idempotent pairs, the
local patterns yield explicit witness coproducts that must verify, and
the toupie classifier predicts the dimension statement that the solver
then has to reproduce.
"""

from dataclasses import dataclass, field as dataclass_field

from .errors import ValidationError
from .frobenius import CoproductCandidate, TensorElement, verify_coproduct
from .ideal import AlgebraBasis, IdealSpec, compute_basis, validate
from .linalg import QQ, SparseMatrix, rank, rref
from .quiver import Path, Quiver


# ---------------------------------------------------------------------------
# Radical square zero

def is_radical_square_zero(quiver: Quiver, ideal: IdealSpec, algebra=None) -> bool:
    """True when every length-2 path dies, i.e. no basis path has length >= 2."""
    if algebra is None:
        validate(quiver, ideal)
        algebra = compute_basis(quiver, ideal)
    return all(len(p) <= 1 for p in algebra.basis)


class RszSpaces:
    """Formal spans used by the radical square zero dimension formula.

    The ambient space is spanned by ordered pairs x (x) y with x, y drawn
    from trivial paths and arrows.  Per vertex p the numerator collects
    (arrow out of p) (x) (e_p or arrow into p) and the mirrored shape; the
    denominator kills the e_p legs at vertices of in/out degree two or
    more and glues the two legs of each arrow with the relator
    arrow (x) e_source - e_target (x) arrow.
    """

    def __init__(self, quiver: Quiver):
        if not quiver.arrows:
            raise ValidationError("dimension formula needs at least one arrow")
        self.quiver = quiver
        tokens = [("e", v) for v in quiver.vertices]
        tokens += [("a", a.name) for a in quiver.arrows]
        self.tokens = tokens
        self.token_index = {t: i for i, t in enumerate(tokens)}
        self.ncols = len(tokens) ** 2

    def pair_column(self, x, y):
        return self.token_index[x] * len(self.tokens) + self.token_index[y]

    def numerator_pairs(self):
        pairs = []
        seen = set()

        def push(x, y):
            if (x, y) not in seen:
                seen.add((x, y))
                pairs.append((x, y))

        for p in self.quiver.vertices:
            outs = [("a", a.name) for a in self.quiver.out_arrows[p]]
            ins = [("a", a.name) for a in self.quiver.in_arrows[p]]
            for x in outs:
                push(x, ("e", p))
                for y in ins:
                    push(x, y)
            for y in ins:
                push(("e", p), y)
        return pairs

    def denominator_rows(self):
        one = QQ.one
        rows = []
        for p in self.quiver.vertices:
            indeg, outdeg = self.quiver.degrees(p)
            if outdeg >= 2:
                for a in self.quiver.out_arrows[p]:
                    rows.append({self.pair_column(("a", a.name), ("e", p)): one})
            if indeg >= 2:
                for a in self.quiver.in_arrows[p]:
                    rows.append({self.pair_column(("e", p), ("a", a.name)): one})
        for a in self.quiver.arrows:
            rows.append({
                self.pair_column(("a", a.name), ("e", a.source)): one,
                self.pair_column(("e", a.target), ("a", a.name)): -one,
            })
        return rows


def radical_square_zero_dimension(quiver: Quiver) -> int:
    """Dimension of the coproduct space of the radical square zero algebra.

    Computed as dim(numerator) - dim(numerator meet denominator), which
    equals rank(numerator + denominator) - rank(denominator).
    """
    spaces = RszSpaces(quiver)
    numerator_rows = [{spaces.pair_column(x, y): QQ.one} for x, y in spaces.numerator_pairs()]
    denominator_rows = spaces.denominator_rows()
    rank_d = rank(SparseMatrix.from_rows(denominator_rows, spaces.ncols))
    rank_nd = rank(SparseMatrix.from_rows(numerator_rows + denominator_rows, spaces.ncols))
    # dim N - dim(N meet D) collapses to rank(N + D) - rank(D) because the
    # numerator pairs are distinct coordinate vectors.
    return rank_nd - rank_d


# ---------------------------------------------------------------------------
# Local vertex patterns

@dataclass
class LocalPatternMatch:
    """One of the five local configurations that force a nonzero coproduct.

    in_arrows/out_arrows are the arrows of the matched vertex, sorted by
    name; vanishing lists the length-2 compositions that reduce to zero,
    as witnessed by the ideal.
    """

    pattern: int
    vertex: str
    in_arrows: tuple
    out_arrows: tuple
    vanishing: tuple
    surviving: tuple = dataclass_field(default=())


def _composition_vanishes(algebra, incoming, outgoing):
    path = Path(incoming.source, outgoing.target, (incoming.name, outgoing.name))
    return not algebra.reduce_path(path)


def detect_local_patterns(quiver: Quiver, ideal: IdealSpec, algebra=None):
    """Scan every vertex for the five coproduct-forcing configurations.

    Vanishing is judged after full reduction, not just against the listed
    generators.  A vertex whose four compositions all vanish reports the
    most specific pattern (4), not its two pattern-3 weakenings.
    """
    if algebra is None:
        algebra = compute_basis(quiver, validate(quiver, ideal))
    matches = []
    for v in quiver.vertices:
        ins = sorted(quiver.in_arrows[v], key=lambda a: a.name)
        outs = sorted(quiver.out_arrows[v], key=lambda a: a.name)
        dead, alive = [], []
        for a in ins:
            for b in outs:
                pair = Path(a.source, b.target, (a.name, b.name))
                (dead if not algebra.reduce_path(pair) else alive).append(pair)
        shape = (len(ins), len(outs))
        pattern = None
        if shape == (2, 1) and len(dead) == 2:
            pattern = 1
        elif shape == (1, 2) and len(dead) == 2:
            pattern = 2
        elif shape == (2, 2) and len(dead) == 4:
            pattern = 4
        elif shape == (2, 2) and len(dead) == 3:
            pattern = 3
        elif shape == (1, 1) and len(dead) == 1:
            pattern = 5
        if pattern is not None:
            matches.append(LocalPatternMatch(
                pattern, v,
                tuple(a.name for a in ins),
                tuple(b.name for b in outs),
                tuple(dead),
                tuple(alive),
            ))
    return matches


def witness_coproduct(match: LocalPatternMatch, algebra: AlgebraBasis) -> CoproductCandidate:
    """One explicit nonzero coproduct for a pattern match.

    The value at the matched vertex is (out-arrow) (x) (in-arrow); for
    pattern 3 the legs are the out-arrow annihilated by both in-arrows
    and the in-arrow annihilated by both out-arrows, for the other
    patterns the first arrows in name order.  The candidate is verified
    before it is returned.
    """
    quiver = algebra.quiver
    v = match.vertex
    if match.pattern == 3:
        surviving = match.surviving[0]
        in_name = next(n for n in match.in_arrows if n != surviving.arrows[0])
        out_name = next(n for n in match.out_arrows if n != surviving.arrows[1])
    else:
        in_name = match.in_arrows[0]
        out_name = match.out_arrows[0]
    left = quiver.path([out_name])
    right = quiver.path([in_name])
    tensor = TensorElement(algebra.field)
    tensor.add_term(left, right, algebra.field.one)
    candidate = CoproductCandidate(algebra, {v: tensor})
    ok, counterexample = verify_coproduct(algebra, candidate)
    if not ok:
        raise ValidationError(
            "pattern preconditions not satisfied by ideal; "
            + counterexample.describe()
        )
    return candidate


# ---------------------------------------------------------------------------
# String algebras

def special_biserial_violation(quiver: Quiver, algebra: AlgebraBasis):
    """First violated condition as a message, or None when special biserial.

    Checks that every vertex emits and receives at most two arrows, and
    that every arrow has at most one surviving continuation on each side.
    """
    for v in quiver.vertices:
        indeg, outdeg = quiver.degrees(v)
        if outdeg > 2:
            return f"vertex {v} is the source of {outdeg} arrows"
        if indeg > 2:
            return f"vertex {v} is the target of {indeg} arrows"
    for a in quiver.arrows:
        continuations = [b for b in quiver.out_arrows[a.target]
                         if not _composition_vanishes(algebra, a, b)]
        if len(continuations) > 1:
            names = ", ".join(b.name for b in continuations)
            return f"arrow {a.name} has several surviving continuations: {names}"
        predecessors = [b for b in quiver.in_arrows[a.source]
                        if not _composition_vanishes(algebra, b, a)]
        if len(predecessors) > 1:
            names = ", ".join(b.name for b in predecessors)
            return f"arrow {a.name} has several surviving predecessors: {names}"
    return None


def is_string(quiver: Quiver, ideal: IdealSpec, algebra=None) -> bool:
    if algebra is None:
        algebra = compute_basis(quiver, validate(quiver, ideal))
    return ideal.is_monomial and special_biserial_violation(quiver, algebra) is None


def is_string_quadratic(ideal: IdealSpec) -> bool:
    return ideal.is_monomial and all(len(p) == 2 for p in ideal.monomial_paths())


def is_gentle(quiver: Quiver, ideal: IdealSpec, algebra=None) -> bool:
    """String with quadratic relations and at most one forbidden pair per side."""
    if algebra is None:
        algebra = compute_basis(quiver, validate(quiver, ideal))
    if not is_string(quiver, ideal, algebra) or not is_string_quadratic(ideal):
        return False
    for a in quiver.arrows:
        forbidden_after = [b for b in quiver.out_arrows[a.target]
                           if _composition_vanishes(algebra, a, b)]
        if len(forbidden_after) > 1:
            return False
        forbidden_before = [b for b in quiver.in_arrows[a.source]
                            if _composition_vanishes(algebra, b, a)]
        if len(forbidden_before) > 1:
            return False
    return True


def string_relation_witness(quiver: Quiver, ideal: IdealSpec, relation: Path,
                            algebra=None) -> CoproductCandidate:
    """Witness coproduct carried by one long monomial relation.

    For a relation a_1 ... a_s of length s >= 3 on a string bound quiver,
    the candidate places (tail after position i) (x) (head up to i) at
    every intermediate vertex of the relation and zero elsewhere.
    """
    if algebra is None:
        algebra = compute_basis(quiver, validate(quiver, ideal))
    if not ideal.is_monomial:
        raise ValidationError("string relation witness needs a monomial ideal")
    violation = special_biserial_violation(quiver, algebra)
    if violation is not None:
        raise ValidationError(f"not a string bound quiver: {violation}")
    if relation.arrows not in {p.arrows for p in ideal.monomial_paths()}:
        raise ValidationError(f"{relation} is not a generator of the ideal")
    s = len(relation)
    if s < 3:
        raise ValidationError("relation must have length >= 3; shorter relations "
                              "are covered by the local pattern witnesses")
    values = {}
    for i in range(1, s):
        head = quiver.path(relation.arrows[:i])
        tail = quiver.path(relation.arrows[i:])
        vertex = head.target
        tensor = TensorElement(algebra.field)
        for left, cl in algebra.reduce_path(tail).items():
            for right, cr in algebra.reduce_path(head).items():
                tensor.add_term(left, right, cl * cr)
        if not tensor.is_zero:
            values[vertex] = tensor
    candidate = CoproductCandidate(algebra, values)
    ok, counterexample = verify_coproduct(algebra, candidate)
    if not ok:
        raise ValidationError(
            "string relation witness failed verification; "
            + counterexample.describe()
        )
    return candidate


# ---------------------------------------------------------------------------
# Toupie algebras

LINEAR_AN = "LINEAR_An"
GENERALIZED_DIAMOND = "GENERALIZED_DIAMOND"
M_ZERO_OTHER = "M_ZERO_OTHER"
M_POSITIVE = "M_POSITIVE"


@dataclass
class ToupieClassification:
    kind: str
    source: str
    sink: str
    branches: tuple          # arrow name tuples, one per branch
    monomial_branches: tuple  # indices of branches carrying monomial relations
    independent_rank: int    # number of linearly independent branch classes
    prediction: str          # "=0", "=1" or ">=1"

    @property
    def branch_lengths(self):
        return tuple(len(b) for b in self.branches)

    @property
    def monomial_relation_branch_count(self):
        return len(self.monomial_branches)

    def prediction_holds(self, dimension: int) -> bool:
        if self.prediction == "=0":
            return dimension == 0
        if self.prediction == "=1":
            return dimension == 1
        return dimension >= 1


def _toupie_branches(quiver: Quiver):
    """Branch decomposition, or a ValidationError when the shape is wrong."""
    if len(quiver.vertices) == 1 and not quiver.arrows:
        v = quiver.vertices[0]
        return v, v, []
    sources = [v for v in quiver.vertices if quiver.degrees(v)[0] == 0]
    sinks = [v for v in quiver.vertices if quiver.degrees(v)[1] == 0]
    if len(sources) != 1 or len(sinks) != 1:
        raise ValidationError("not a toupie quiver: need a unique source and a unique sink")
    source, sink = sources[0], sinks[0]
    for v in quiver.vertices:
        if v in (source, sink):
            continue
        if quiver.degrees(v) != (1, 1):
            raise ValidationError(
                f"not a toupie quiver: intermediate vertex {v} has degrees "
                f"{quiver.degrees(v)}"
            )
    branches = []
    used = set()
    for start in quiver.out_arrows[source]:
        walk = [start.name]
        current = start.target
        while current != sink:
            nxt = quiver.out_arrows[current][0]
            walk.append(nxt.name)
            current = nxt.target
            if len(walk) > len(quiver.arrows):
                raise ValidationError("not a toupie quiver: branch walk does not close")
        branches.append(tuple(walk))
        used.update(walk)
    if len(used) != len(quiver.arrows):
        raise ValidationError("not a toupie quiver: arrows outside every branch")
    return source, sink, branches


def _is_subword(word, inside):
    for i in range(len(inside) - len(word) + 1):
        if inside[i:i + len(word)] == word:
            return True
    return False


def toupie_classify(quiver: Quiver, ideal: IdealSpec, field=QQ) -> ToupieClassification:
    """Classify a toupie algebra and predict its coproduct space dimension.

    Relations must be branch-supported: a single path inside one branch,
    or a linear combination of full branch paths.  Linear relations are
    row-reduced over the branches; a reduced row touching a single branch
    kills that branch path outright and therefore counts as a monomial
    relation on it.
    """
    validate(quiver, ideal)
    source, sink, branches = _toupie_branches(quiver)
    t = len(branches)
    full = {b: i for i, b in enumerate(branches)}

    monomial_branches = set()
    linear_rows = []
    for g in ideal.generators:
        if g.is_monomial:
            word = next(iter(g.terms)).arrows
            holders = [i for i, b in enumerate(branches) if _is_subword(word, b)]
            if not holders:
                raise ValidationError(
                    f"relation {g} is not supported inside a single branch"
                )
            monomial_branches.add(holders[0])
            continue
        row = {}
        for path, coeff in g.terms.items():
            index = full.get(path.arrows)
            if index is None:
                raise ValidationError(
                    f"non-monomial relation term {path} is not a full branch path"
                )
            row[index] = field.coerce(coeff)
        linear_rows.append(row)

    matrix = SparseMatrix.from_rows(linear_rows, t, field)
    reduced, pivots = rref(matrix)
    for row in reduced.row_dicts():
        if len(row) == 1:
            monomial_branches.add(next(iter(row)))
    independent_rank = t - len(pivots)

    if monomial_branches:
        kind, prediction = M_POSITIVE, ">=1"
    elif t <= 1 and not ideal.generators:
        kind, prediction = LINEAR_AN, "=1"
    elif t >= 2 and independent_rank == 1:
        # All branch paths are proportional in the quotient; the scaled
        # linear structure on each branch survives.
        kind, prediction = GENERALIZED_DIAMOND, "=1"
    else:
        kind, prediction = M_ZERO_OTHER, "=0"

    return ToupieClassification(
        kind=kind,
        source=source,
        sink=sink,
        branches=tuple(branches),
        monomial_branches=tuple(sorted(monomial_branches)),
        independent_rank=independent_rank,
        prediction=prediction,
    )
