import random

import pytest

from ratlam.cpo import (
    Classification, ContextMap, app, bottom_candidate, build_tower, check_interpreted, constant_map,
    interpret, leq_maps, load_model, phi, projection, solve_interpreted,
)
from ratlam.cpo.fixpoint import approximation_report, iteration_bound
from ratlam.errors import ContextMismatchError, ModelError, SchemeError
from ratlam.scheme import parse_scheme, solve
from ratlam.term_core import Context, parse_term
from ratlam.tests.generators import post_fixed_point, random_monotone_map

Y_TEXT = "Y = \\f. f @ (Y @ f)\n"
PAIR_TEXT = "context { y }\np1 = p1 @ (\\x. p2)\np2 = y @ p1\n"
SCOPED_TEXT = "context { y }\np = \\x. q\nq [x] = x @ y\n"
STREAM_TEXT = "signature { s/2 }\ncontext { y }\np = s(y, p)\n"


@pytest.fixture(scope="module")
def tower2():
    return build_tower(2)


def pair_step(m, c1: ContextMap, c2: ContextMap):
    """Φ for the two-rule scheme, written out by hand."""
    values1, values2 = [], []
    for y in range(m.size):
        values1.append(app(m, c1.value((y,)), m.abstract(lambda d: c2.value((y,)))))
        values2.append(app(m, y, c1.value((y,))))
    ctx = Context.of("y")
    return (
        ContextMap(context=ctx, size=m.size, values=tuple(values1)),
        ContextMap(context=ctx, size=m.size, values=tuple(values2)),
    )


class TestSolveInterpreted:
    """Test cases for Kleene iteration."""

    def test_context_variable(self, tower2):
        s = parse_scheme("context { y }\np = y\n")
        solution, iterations = solve_interpreted(s, tower2)
        assert solution["p"] == projection(Context.of("y"), "y", tower2.size)
        assert iterations == 2

    def test_unguarded_loop_stays_bottom(self, tower2):
        solution, iterations = solve_interpreted(parse_scheme("p = p\n"), tower2)
        assert solution["p"].values == (tower2.bottom,)
        assert iterations == 1

    def test_y(self, tower2):
        s = parse_scheme(Y_TEXT)
        solution, iterations = solve_interpreted(s, tower2)
        assert solution["Y"].values == (2,)
        assert iterations == 2
        assert check_interpreted(s, tower2, solution) == Classification.FIXED

    def test_pair(self, tower2):
        s = parse_scheme(PAIR_TEXT)
        solution, iterations = solve_interpreted(s, tower2)
        assert solution["p1"].values == (0,) * 10
        assert solution["p2"].values == (0, 0, 0, 0, 0, 0, 2, 2, 2, 9)
        assert iterations <= iteration_bound(s, tower2)
        assert check_interpreted(s, tower2, solution) == Classification.FIXED

    def test_scoped_nonterminal(self, tower2):
        y = Context.of("y")
        solution, iterations = solve_interpreted(parse_scheme(SCOPED_TEXT), tower2)
        assert solution["p"] == interpret(parse_term("\\x. x @ y", ctx=y), tower2, y)
        assert solution["q"].context == Context.of("y", "x")
        assert iterations == 3

    def test_operations(self):
        m = load_model("model tower 2\nop s = join\n", parse_scheme(STREAM_TEXT).signature)
        solution, iterations = solve_interpreted(parse_scheme(STREAM_TEXT), m)
        assert solution["p"] == projection(Context.of("y"), "y", m.size)
        assert iterations == 2

    def test_missing_operation_table(self, tower2):
        with pytest.raises(ModelError):
            solve_interpreted(parse_scheme(STREAM_TEXT), tower2)

    def test_iterates_increase(self, tower2):
        s = parse_scheme(PAIR_TEXT)
        _, iterations = solve_interpreted(s, tower2)
        cand = bottom_candidate(s, tower2)
        for _ in range(iterations - 1):
            step = phi(s, tower2, cand)
            assert all(leq_maps(cand[p], step[p], tower2.poset) for p in s.nonterminals)
            cand = step
        assert phi(s, tower2, cand) == cand

    def test_least_among_post_fixed_points(self, tower2):
        """The Kleene answer lies below every post-fixed point."""
        rng = random.Random(79)
        for text in (PAIR_TEXT, Y_TEXT):
            s = parse_scheme(text)
            least, _ = solve_interpreted(s, tower2)
            for _ in range(50):
                post = post_fixed_point(rng, s, tower2)
                assert check_interpreted(s, tower2, post) != Classification.NEITHER
                assert all(leq_maps(least[p], post[p], tower2.poset) for p in s.nonterminals)


class TestCheckInterpreted:
    """Test cases for classifying candidates."""

    def test_top_is_post_fixed(self, tower2):
        s = parse_scheme("context { y }\np = y\n")
        top = {"p": constant_map(Context.of("y"), tower2.size, tower2.poset.top())}
        assert check_interpreted(s, tower2, top) == Classification.POST_FIXED

    def test_bottom_is_not_post_fixed(self, tower2):
        s = parse_scheme("context { y }\np = y\n")
        assert check_interpreted(s, tower2, bottom_candidate(s, tower2)) == Classification.NEITHER

    def test_phi_matches_hand_written_step(self, tower2):
        s = parse_scheme(PAIR_TEXT)
        rng = random.Random(83)
        y = Context.of("y")
        for _ in range(100):
            c1, c2 = random_monotone_map(rng, tower2, y), random_monotone_map(rng, tower2, y)
            s1, s2 = pair_step(tower2, c1, c2)
            assert phi(s, tower2, {"p1": c1, "p2": c2}) == {"p1": s1, "p2": s2}
            if s1 == c1 and s2 == c2:
                expected = Classification.FIXED
            elif leq_maps(s1, c1, tower2.poset) and leq_maps(s2, c2, tower2.poset):
                expected = Classification.POST_FIXED
            else:
                expected = Classification.NEITHER
            assert check_interpreted(s, tower2, {"p1": c1, "p2": c2}) == expected

    def test_candidate_errors(self, tower2):
        s = parse_scheme("context { y }\np = y\n")
        with pytest.raises(SchemeError):
            check_interpreted(s, tower2, {})
        with pytest.raises(ContextMismatchError):
            check_interpreted(s, tower2, {"p": constant_map(Context(), tower2.size, 0)})

    def test_non_monotone_candidate_is_rejected(self, tower2):
        s = parse_scheme("context { y }\np = y\n")
        falling = ContextMap(context=Context.of("y"), size=tower2.size, values=(9,) + (0,) * 9)
        with pytest.raises(ModelError, match="not monotone"):
            check_interpreted(s, tower2, {"p": falling})


class TestApproximation:
    """Test cases for interpreting cuts of the uninterpreted solution."""

    def test_y_cuts(self, tower2):
        s = parse_scheme(Y_TEXT)
        report = approximation_report(s, tower2, solve(s), 4)
        [entry] = report.entries
        assert [c.values for c in entry.approximations] == [(0,), (0,), (0,), (2,), (2,)]
        assert entry.increasing
        assert report.agrees

    def test_pair_cuts(self, tower2):
        s = parse_scheme(PAIR_TEXT)
        report = approximation_report(s, tower2, solve(s), 4)
        assert [e.nonterminal for e in report.entries] == ["p1", "p2"]
        assert all(e.increasing for e in report.entries)
        assert report.agrees

    def test_shallow_cut_disagrees(self, tower2, caplog):
        s = parse_scheme(Y_TEXT)
        report = approximation_report(s, tower2, solve(s), 1)
        assert not report.agrees
        assert "differs from the least interpreted solution" in caplog.text

    def test_negative_depth(self, tower2):
        s = parse_scheme(Y_TEXT)
        with pytest.raises(ValueError):
            approximation_report(s, tower2, solve(s), -1)
