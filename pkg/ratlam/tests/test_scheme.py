import random

import pytest

from ratlam.errors import RatlamError, SchemeError, TermSyntaxError, UnguardedSchemeError
from ratlam.rational import (
    TermGraph, bisim_eq, graph_from_term, rename_graph, subtree_count, substitute_graph, unfold,
)
from ratlam.scheme import (
    check_guarded, flatten, inline_aliases, make_scheme, parse_scheme, print_scheme,
    read_solution, rename_scheme, solve, verify_solution, write_solution,
)
from ratlam.term_core import Context, FreeVar, parse_term
from ratlam.tests.generators import perturbations, random_scheme, unrolled, unrolled_perturbations

Y_TEXT = "Y = \\f. f @ (Y @ f)\n"
PAIR_TEXT = """\
# two rules over y
context { y }
p1 = p1 @ (\\x. p2)
p2 = y @ p1
"""
SCOPED_TEXT = """\
context { y }
p = \\x. q
q [x] = x @ y
"""


class TestParser:
    """Test cases for the scheme file format."""

    def test_parse_pair(self):
        s = parse_scheme(PAIR_TEXT)
        assert s.nonterminals == ("p1", "p2")
        assert s.context == Context.of("y")
        assert s.rules["p2"] == parse_term("y @ p1", ctx=Context.of("y", "p1", "p2"))

    def test_blocks_may_span_lines(self):
        s = parse_scheme("signature {\n  s/2\n  c/0 }\ncontext { y ;\n z }\np = s(c, p)\n")
        assert s.signature.symbols == {"s": 2, "c": 0}
        assert s.context.names == ("y", "z")

    def test_nonterminals_block_orders_and_checks(self):
        s = parse_scheme("nonterminals { b ; a }\na = \\x. x\nb = a @ a\n")
        assert s.nonterminals == ("b", "a")
        with pytest.raises(SchemeError):
            parse_scheme("nonterminals { a ; b }\na = \\x. x\n")
        with pytest.raises(SchemeError):
            parse_scheme("nonterminals { a }\na = \\x. x\nb = a\n")

    def test_errors(self):
        with pytest.raises(SchemeError):
            parse_scheme("p = \\x. x\np = \\x. x\n")
        with pytest.raises(SchemeError):
            parse_scheme("context { p }\np = p\n")
        with pytest.raises(TermSyntaxError):
            parse_scheme("p = \\x. x @\n")
        with pytest.raises(TermSyntaxError):
            parse_scheme("this is not a rule\n")
        with pytest.raises(RatlamError):
            parse_scheme("p = q\n")

    def test_errors_carry_file_positions(self):
        with pytest.raises(TermSyntaxError) as exc:
            parse_scheme("context { y }\n\np = y @\n")
        assert exc.value.line == 3
        with pytest.raises(TermSyntaxError) as exc:
            parse_scheme("constants { a }\n")
        assert (exc.value.line, exc.value.column) == (1, 1)
        with pytest.raises(TermSyntaxError):
            parse_scheme("signature { s }\np = \\x. x\n")

    def test_block_words_stay_usable_as_names(self):
        s = parse_scheme("context { signature }\ncontext = \\x. signature @ x  # trailing comment\n")
        assert s.nonterminals == ("context",)
        assert s.context.names == ("signature",)
        assert parse_scheme(print_scheme(s)) == s

    def test_scoped_references_must_sit_under_their_binders(self):
        assert parse_scheme(SCOPED_TEXT).scope("q") == ("x",)
        with pytest.raises(SchemeError):
            parse_scheme("context { y }\np = q\nq [x] = x @ y\n")

    def test_scoped_references_match_binders_by_position(self):
        """Binder hints never decide whether a scoped reference is legal."""
        original = parse_scheme(SCOPED_TEXT)
        renamed = parse_scheme("context { y }\np = \\z. q\nq [x] = x @ y\n")
        assert renamed.rules["p"] == original.rules["p"]
        assert bisim_eq(solve(renamed)["p"], solve(original)["p"])

    def test_print_round_trip(self):
        for text in (Y_TEXT, PAIR_TEXT, SCOPED_TEXT):
            s = parse_scheme(text)
            assert parse_scheme(print_scheme(s)) == s

    def test_make_scheme_reports_scheme_errors(self):
        with pytest.raises(SchemeError) as exc:
            make_scheme(context=Context.of("p"), nonterminals=("p",), rules={"p": FreeVar("p")})
        assert "Value error" not in str(exc.value)


class TestGuard:
    """Test cases for guardedness and alias inlining."""

    def test_guarded(self):
        assert check_guarded(parse_scheme(PAIR_TEXT)).guarded

    def test_unguarded_witness(self):
        result = check_guarded(parse_scheme("p = p\n"))
        assert not result.guarded
        assert result.witness == "p"

    def test_inline_one_level(self):
        s = parse_scheme("context { y }\np = q\nq = y @ q\n")
        assert check_guarded(s).witness == "p"
        inlined = inline_aliases(s)
        assert check_guarded(inlined).guarded
        assert bisim_eq(solve(inlined)["p"], solve(inlined)["q"])

    def test_cycles_stay_unguarded(self):
        assert not check_guarded(inline_aliases(parse_scheme("p = p\n"))).guarded


class TestFlatten:
    """Test cases for flattening."""

    def test_pair(self):
        assert print_scheme(flatten(parse_scheme(PAIR_TEXT))) == (
            "context { y }\n"
            "p1 = p1 @ _t0\n"
            "p2 = _t1 @ p1\n"
            "_t0 = \\x. p2\n"
            "_t1 = y\n"
        )

    def test_y_binders_become_scoped_nonterminals(self):
        flat = flatten(parse_scheme(Y_TEXT))
        assert len(flat.nonterminals) == 5
        assert all(flat.scope(p) == ("f",) for p in ("_t0", "_t1", "_t2", "_t3"))

    def test_output_reparses_and_resolves_to_the_same_solution(self):
        for text in (Y_TEXT, PAIR_TEXT, SCOPED_TEXT):
            s = parse_scheme(text)
            again = parse_scheme(print_scheme(flatten(s)))
            first, second = solve(s), solve(again)
            for p in s.entry_points():
                assert bisim_eq(first[p], second[p])

    def test_unguarded_is_rejected(self):
        with pytest.raises(UnguardedSchemeError):
            flatten(parse_scheme("p = p\n"))

    def test_flat_schemes_stay_as_they_are(self):
        flat = flatten(parse_scheme(PAIR_TEXT))
        assert flatten(flat).nonterminals == flat.nonterminals

    def test_preserves_solutions(self):
        rng = random.Random(59)
        for _ in range(100):
            s = random_scheme(rng)
            flat = flatten(s)
            direct, via_flat = solve(s), solve(flat)
            for p in s.nonterminals:
                assert bisim_eq(direct[p], via_flat[p])
            assert verify_solution(s, {p: via_flat[p] for p in s.nonterminals})


class TestSolve:
    """Test cases for uninterpreted solutions."""

    def test_y(self):
        s = parse_scheme(Y_TEXT)
        graph = solve(s)["Y"]
        assert subtree_count(graph) == 4
        assert unfold(graph, 4) == parse_term("\\f. f @ ((\\x. _|_) @ f)")
        assert verify_solution(s, solve(s))

    def test_pair_equations_hold(self):
        s = parse_scheme(PAIR_TEXT)
        sol = solve(s)
        y = Context.of("y")
        ctx = Context.of("y", "q1", "q2")
        sigma = {"y": graph_from_term(FreeVar("y"), y), "q1": sol["p1"], "q2": sol["p2"]}

        def rhs(text: str) -> TermGraph:
            return substitute_graph(graph_from_term(parse_term(text, ctx=ctx), ctx), sigma, y)

        assert bisim_eq(sol["p2"], rhs("y @ q1"))
        assert bisim_eq(sol["p1"], rhs("q1 @ (\\x. q2)"))

    def test_pair_cuts(self):
        sol = solve(parse_scheme(PAIR_TEXT))
        y = Context.of("y")
        assert unfold(sol["p1"], 3) == parse_term("_|_ @ _|_ @ (\\x. _|_) @ (\\x. _|_ @ _|_)", ctx=y)
        assert unfold(sol["p2"], 3) == parse_term("y @ (_|_ @ _|_ @ (\\x. _|_))", ctx=y)
        assert unfold(sol["p2"], 4) == parse_term(
            "y @ (_|_ @ _|_ @ (\\x. _|_) @ (\\x. _|_ @ _|_))", ctx=y
        )

    def test_pair_cuts_at_depth_six(self):
        sol = solve(parse_scheme(PAIR_TEXT))
        y = Context.of("y")
        assert unfold(sol["p1"], 6) == parse_term(
            "_|_ @ _|_ @ (\\x. _|_) @ (\\x. _|_ @ _|_) @ (\\x. y @ (_|_ @ _|_))"
            " @ (\\x. y @ (_|_ @ _|_ @ (\\x. _|_)))"
            " @ (\\x. y @ (_|_ @ _|_ @ (\\x. _|_) @ (\\x. _|_ @ _|_)))",
            ctx=y,
        )
        assert unfold(sol["p2"], 6) == parse_term(
            "y @ (_|_ @ _|_ @ (\\x. _|_) @ (\\x. _|_ @ _|_) @ (\\x. y @ (_|_ @ _|_))"
            " @ (\\x. y @ (_|_ @ _|_ @ (\\x. _|_))))",
            ctx=y,
        )

    def test_scoped_nonterminals(self):
        s = parse_scheme(SCOPED_TEXT)
        sol = solve(s)
        assert list(sol) == ["p"]
        assert unfold(sol["p"], 5) == parse_term("\\x. x @ y", ctx=Context.of("y"))

    def test_unguarded_is_rejected(self):
        with pytest.raises(UnguardedSchemeError):
            solve(parse_scheme("p = p\n"))

    def test_solution_is_unique(self):
        """Perturbed solutions fail verification unless they are bisimilar."""
        rng = random.Random(41)
        for _ in range(50):
            s = random_scheme(rng, max_nonterminals=4, depth=2)
            sol = solve(s)
            assert verify_solution(s, sol)
            for p in s.nonterminals:
                for other in perturbations(sol[p]) + unrolled_perturbations(sol[p]):
                    cand = dict(sol, **{p: other})
                    assert verify_solution(s, cand) == bisim_eq(other, sol[p])

    def test_unrolling_keeps_a_solution(self):
        s = parse_scheme(Y_TEXT)
        sol = solve(s)
        unrollings = unrolled(sol["Y"])
        assert unrollings
        for graph, _ in unrollings:
            assert verify_solution(s, {"Y": graph.normalized()})
        moved = unrolled_perturbations(sol["Y"])
        assert moved
        assert not all(verify_solution(s, {"Y": g}) for g in moved)
        for g in moved:
            assert verify_solution(s, {"Y": g}) == bisim_eq(g, sol["Y"])

    def test_wrong_candidate_fails(self):
        s = parse_scheme(PAIR_TEXT)
        sol = solve(s)
        assert not verify_solution(s, {"p1": sol["p2"], "p2": sol["p1"]})
        with pytest.raises(SchemeError):
            verify_solution(s, {"p1": sol["p1"]})

    def test_verify_rejects_scoped_schemes(self):
        s = parse_scheme(SCOPED_TEXT)
        with pytest.raises(SchemeError):
            verify_solution(s, solve(s))

    def test_solve_is_natural_in_the_context(self):
        s = parse_scheme(PAIR_TEXT)
        target = Context.of("a")
        moved = solve(rename_scheme(s, {"y": "a"}, target))
        for p, g in solve(s).items():
            assert bisim_eq(moved[p], rename_graph(g, {"y": "a"}, target))

    def test_naturality_on_random_schemes(self):
        rng = random.Random(53)
        ctx, target = Context.of("y", "z"), Context.of("a", "b")
        for _ in range(50):
            s = random_scheme(rng, ctx=ctx)
            gamma = {"y": rng.choice("ab"), "z": rng.choice("ab")}
            moved = solve(rename_scheme(s, gamma, target))
            for p, g in solve(s).items():
                assert bisim_eq(moved[p], rename_graph(g, gamma, target))


class TestSolutionFormat:
    """Test cases for the solution file format."""

    def test_round_trip(self):
        s = parse_scheme(PAIR_TEXT)
        sol = solve(s)
        text = write_solution(sol)
        assert text.startswith("[p1]\nn0 = n0 @ n1\n")
        again = read_solution(text, s.signature, s.context)
        assert all(bisim_eq(again[p], sol[p]) for p in sol)
        assert verify_solution(s, again)

    def test_nullary_symbols_and_bound_leaves(self):
        s = parse_scheme("signature { c/0 ; s/2 }\np = \\x. s(x, c)\n")
        text = write_solution(solve(s))
        assert "%0" in text and "= c" in text
        assert bisim_eq(read_solution(text, s.signature, s.context)["p"], solve(s)["p"])

    def test_errors(self):
        ctx = Context.of("y")
        with pytest.raises(TermSyntaxError):
            read_solution("n0 = y\n", parse_scheme(PAIR_TEXT).signature, ctx)
        with pytest.raises(TermSyntaxError):
            read_solution("[p]\nn0 = n1 @ n0\n", parse_scheme(PAIR_TEXT).signature, ctx)
        with pytest.raises(TermSyntaxError):
            read_solution("[p]\nn0 = q\n", parse_scheme(PAIR_TEXT).signature, ctx)

    def test_errors_point_at_the_offending_node(self):
        with pytest.raises(TermSyntaxError) as exc:
            read_solution("[p]\nn0 = n1 @ n0\n", parse_scheme(PAIR_TEXT).signature, Context.of("y"))
        assert (exc.value.line, exc.value.column) == (2, 6)

    def test_unicode_aliases(self):
        ctx = Context.of("y")
        sig = parse_scheme(PAIR_TEXT).signature
        g = read_solution("[p]\nn0 = λx. n1\nn1 = ⊥\n", sig, ctx)["p"]
        assert g == read_solution("[p]\nn0 = \\x. n1\nn1 = _|_\n", sig, ctx)["p"]
