import itertools

import pytest

from frobq.errors import ValidationError
from frobq.quiver import Path, PathExpr, Quiver, compose


def linear(n):
    vertices = [str(i) for i in range(1, n + 1)]
    arrows = [(f"a{i}", str(i), str(i + 1)) for i in range(1, n)]
    return Quiver(vertices, arrows)


LOOP = Quiver(["p"], [("x", "p", "p")])
KRONECKER = Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
CYCLE3 = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")])


class TestConstruction:
    def test_duplicate_vertex_rejected(self):
        with pytest.raises(ValidationError):
            Quiver(["1", "1"], [])

    def test_duplicate_arrow_rejected(self):
        with pytest.raises(ValidationError):
            Quiver(["1", "2"], [("a", "1", "2"), ("a", "2", "1")])

    def test_unknown_endpoint_rejected(self):
        with pytest.raises(ValidationError):
            Quiver(["1"], [("a", "1", "7")])

    def test_disconnected_rejected(self):
        with pytest.raises(ValidationError, match="not connected"):
            Quiver(["1", "2", "3"], [("a", "1", "2")])

    def test_loops_and_parallel_arrows_allowed(self):
        Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2"), ("l", "2", "2")])

    def test_single_vertex_is_connected(self):
        Quiver(["p"], [])


class TestCompose:
    def test_chain(self):
        q = linear(3)
        p = compose(q.path(["a1"]), q.path(["a2"]))
        assert p == Path("1", "3", ("a1", "a2"))

    def test_mismatched_endpoints_give_none(self):
        q = Quiver(["1", "2", "3", "4"],
                   [("a", "1", "2"), ("m", "2", "3"), ("g", "3", "4")])
        assert compose(q.path(["a"]), q.path(["g"])) is None

    def test_trivial_paths_are_identities(self):
        q = linear(2)
        a = q.path(["a1"])
        assert compose(q.trivial_path("1"), a) == a
        assert compose(a, q.trivial_path("2")) == a

    @pytest.mark.parametrize("quiver", [linear(4), LOOP, CYCLE3])
    def test_associative_on_short_paths(self, quiver):
        paths = quiver.enumerate_paths(2)
        for p, q, r in itertools.product(paths, repeat=3):
            left = compose(p, q)
            right = compose(q, r)
            lhs = compose(left, r) if left is not None else None
            rhs = compose(p, right) if right is not None else None
            # Composability of the full triple must agree on both sides.
            if left is not None and right is not None:
                assert lhs == rhs


class TestTrivialPath:
    def test_length_zero(self):
        q = linear(3)
        e = q.trivial_path("2")
        assert len(e) == 0 and e.source == e.target == "2"

    def test_loop_vertex(self):
        assert LOOP.trivial_path("p").is_trivial

    def test_unknown_vertex(self):
        with pytest.raises(ValidationError, match="unknown vertex"):
            linear(3).trivial_path("7")


class TestEnumeratePaths:
    def test_linear_three_by_hand(self):
        q = linear(3)
        got = [str(p) for p in q.enumerate_paths(2)]
        assert got == ["e_1", "e_2", "e_3", "a1", "a2", "a1*a2"]

    def test_loop_powers(self):
        got = [str(p) for p in LOOP.enumerate_paths(3)]
        assert got == ["e_p", "x", "x*x", "x*x*x"]

    def test_kronecker_has_no_length_two(self):
        got = [str(p) for p in KRONECKER.enumerate_paths(2)]
        assert got == ["e_1", "e_2", "a", "b"]

    @pytest.mark.parametrize("quiver", [linear(5), KRONECKER, CYCLE3, LOOP])
    def test_no_duplicates_and_prefix_closed(self, quiver):
        paths = quiver.enumerate_paths(4)
        assert len(set(paths)) == len(paths)
        seen = set(paths)
        for p in paths:
            for k in range(len(p)):
                prefix_arrows = p.arrows[:k]
                if prefix_arrows:
                    prefix = quiver.path(prefix_arrows)
                else:
                    prefix = quiver.trivial_path(p.source)
                assert prefix in seen


class TestDegreesAndCycles:
    def test_linear_middle(self):
        assert linear(3).degrees("2") == (1, 1)

    def test_out_star(self):
        q = Quiver(["p", "q1", "q2"], [("a", "p", "q1"), ("b", "p", "q2")])
        assert q.degrees("p") == (0, 2)

    def test_loop_counts_once_each_side(self):
        assert LOOP.degrees("p") == (1, 1)

    def test_unknown_vertex(self):
        with pytest.raises(ValidationError):
            LOOP.degrees("zz")

    @pytest.mark.parametrize("quiver", [linear(4), KRONECKER, CYCLE3, LOOP])
    def test_degree_sums_count_arrows(self, quiver):
        indeg = sum(quiver.degrees(v)[0] for v in quiver.vertices)
        outdeg = sum(quiver.degrees(v)[1] for v in quiver.vertices)
        assert indeg == outdeg == len(quiver.arrows)

    def test_linear_acyclic(self):
        q = linear(5)
        assert q.is_acyclic() and q.longest_path_length() == 4

    def test_loop_cyclic(self):
        assert not LOOP.is_acyclic() and LOOP.longest_path_length() is None

    def test_oriented_cycle_cyclic(self):
        assert not CYCLE3.is_acyclic()


class TestPathExpr:
    def test_parallel_enforced(self):
        q = linear(3)
        with pytest.raises(ValidationError, match="non-parallel"):
            PathExpr({q.path(["a1"]): 1, q.path(["a2"]): 1})

    def test_zero_is_empty(self):
        assert PathExpr({}).is_zero

    def test_cancellation(self):
        q = linear(3)
        p = q.path(["a1", "a2"])
        assert PathExpr([(p, 1), (p, -1)]).is_zero
