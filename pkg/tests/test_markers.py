import pytest

from vxl import nodes as N
from vxl.errors import GuardError, MarkerError, UnknownIdError
from vxl.interp import evaluate
from vxl.markers import (CountingIdGenerator, RandomIdGenerator,
                         add_alternative, apply_universe, cleanup, rename,
                         set_active, set_alternative_body, set_disabled,
                         wrap_in_probe, wrap_in_replacement,
                         wrap_in_variation)
from vxl.parser import parse
from vxl.printer import print_program
from vxl.universes import active_assignment, collect_variation_tree
from vxl.values import value_equal

from oracles import random_program


def span_of(source: str, fragment: str, occurrence=0) -> N.Span:
    start = -1
    for _ in range(occurrence + 1):
        start = source.index(fragment, start + 1)
    return N.Span(len(source[:start].encode()),
                  len(source[:start + len(fragment)].encode()))


def find_variation(tree, vid):
    return next(n for n in N.walk(tree)
                if isinstance(n, N.Variation) and n.vid == vid)


@pytest.fixture
def idgen():
    return CountingIdGenerator()


class TestWrapInVariation:
    def test_wrap_number_creates_two_identical_alternatives(self, idgen):
        source = 'example "main" { let position = 1; position + 0.3 }'
        tree, vid = wrap_in_variation(parse(source), span_of(source, "0.3"),
                                      idgen)
        assert vid == "v1"
        printed = print_program(tree)
        assert ('position + __variation("v1", 0, "", '
                '__alt("0.3", false, { 0.3 }), '
                '__alt("0.3", false, { 0.3 }))') in printed

    def test_wrap_whole_call(self, idgen):
        source = ('fn make() { [1] }\nexample "main" { let s = make(); '
                  'len(s) }')
        tree, vid = wrap_in_variation(parse(source),
                                      span_of(source, "make()", occurrence=1),
                                      idgen)
        vp = find_variation(tree, vid)
        assert len(vp.alts) == 2
        for alt in vp.alts:
            assert isinstance(alt.block.tail, N.Call)
            assert alt.block.tail.callee == "make"

    def test_partial_expression_span_rejected(self, idgen):
        source = 'example "main" { let position = 1; position + 0.3 }'
        with pytest.raises(MarkerError):
            wrap_in_variation(parse(source), span_of(source, "+ 0.3"), idgen)

    def test_wrapping_preserves_active_semantics(self, idgen):
        source = 'example "main" { let position = 1; position + 0.3 }'
        tree = parse(source)
        before = evaluate(tree, "main")
        wrapped, _ = wrap_in_variation(tree, span_of(source, "0.3"), idgen)
        after = evaluate(wrapped, "main")
        assert value_equal(before.return_value, after.return_value)


class TestAddAlternative:
    def test_add_literal(self, idgen):
        source = ('example "main" { __variation("rs", 0, "reserve", '
                  '__alt("100", false, { 100 }), '
                  '__alt("100", false, { 100 })) }')
        tree = add_alternative(parse(source), "rs", "1000")
        vp = find_variation(tree, "rs")
        assert [a.name for a in vp.alts] == ["100", "100", "1000"]
        assert vp.alts[2].block.tail == N.Num(1000.0)

    def test_default_copies_active(self, idgen):
        source = ('example "main" { __variation("v", 1, "", '
                  '__alt("1", false, { 1 }), __alt("2", false, { 2 })) }')
        tree = add_alternative(parse(source), "v", None)
        vp = find_variation(tree, "v")
        assert vp.alts[2].block == vp.alts[1].block
        assert vp.alts[2].name == "2"

    def test_unknown_id(self):
        with pytest.raises(UnknownIdError):
            add_alternative(parse('example "main" { 1 }'), "zz", "2")


class TestActiveAndDisabled:
    SOURCE = ('example "main" { __variation("v1", 0, "", '
              '__alt("a", false, { 1 }), __alt("b", false, { 2 }), '
              '__alt("c", true, { 3 })) }')

    def test_set_active(self):
        tree = set_active(parse(self.SOURCE), "v1", 1)
        assert find_variation(tree, "v1").active_index == 1

    def test_set_active_on_disabled_rejected(self):
        with pytest.raises(MarkerError):
            set_active(parse(self.SOURCE), "v1", 2)

    def test_set_active_out_of_range(self):
        with pytest.raises(MarkerError):
            set_active(parse(self.SOURCE), "v1", 3)

    def test_disable_then_reenable_is_identity(self):
        tree = parse(self.SOURCE)
        toggled = set_disabled(set_disabled(tree, "v1", 1, True),
                               "v1", 1, False)
        assert toggled == tree

    def test_disabling_active_moves_active(self):
        tree = set_disabled(parse(self.SOURCE), "v1", 0, True)
        vp = find_variation(tree, "v1")
        assert vp.alts[0].disabled
        assert vp.active_index == 1

    def test_disabling_last_enabled_rejected(self):
        tree = set_disabled(parse(self.SOURCE), "v1", 0, True)
        with pytest.raises(GuardError):
            set_disabled(tree, "v1", 1, True)

    def test_apply_universe_sets_all_actives(self):
        source = ('example "main" { __variation("v1", 0, "", '
                  '__alt("a", false, { 1 }), __alt("b", false, { 2 })) + '
                  '__variation("v2", 0, "", __alt("c", false, { 3 }), '
                  '__alt("d", false, { 4 })) }')
        tree = apply_universe(parse(source), {"v1": 1, "v2": 1})
        vt = collect_variation_tree(tree)
        assert active_assignment(vt) == {"v1": 1, "v2": 1}


class TestRename:
    SOURCE = ('example "main" { __variation("v1", 0, "", '
              '__alt("a", false, { 1 }), __alt("b", false, { 2 })) }')

    def test_rename_variation(self):
        tree = rename(parse(self.SOURCE), "v1", None, "workload")
        assert find_variation(tree, "v1").name == "workload"

    def test_rename_alternative(self):
        tree = rename(parse(self.SOURCE), "v1", 0, "ordered")
        assert find_variation(tree, "v1").alts[0].name == "ordered"

    def test_rename_unknown(self):
        with pytest.raises(UnknownIdError):
            rename(parse(self.SOURCE), "zz", None, "x")


class TestWrapInProbe:
    def test_probe_call_argument_in_place(self, idgen):
        source = ('fn draw(x, y) { x + y }\n'
                  'example "main" { let position = 3; draw(position, 40) }')
        tree, pid = wrap_in_probe(parse(source),
                                  span_of(source, "position", occurrence=1),
                                  idgen)
        assert pid == "p1"
        assert f'draw(__probe("p1", position), 40)' in print_program(tree)

    def test_probe_cost_expression(self, idgen):
        source = 'example "main" { cost { 1 + 2 } }'
        tree, pid = wrap_in_probe(parse(source),
                                  span_of(source, "cost { 1 + 2 }"), idgen)
        assert '__probe("p1", cost { 1 + 2 })' in print_program(tree)

    def test_nested_probes_get_distinct_ids(self, idgen):
        source = 'example "main" { 1 + 2 }'
        tree, first = wrap_in_probe(parse(source), span_of(source, "1 + 2"),
                                    idgen)
        printed = print_program(tree)
        inner = f'__probe("{first}", 1 + 2)'
        tree2, second = wrap_in_probe(tree, span_of(printed, inner), idgen)
        assert first != second
        assert f'__probe("{second}", __probe("{first}", 1 + 2))' \
            in print_program(tree2)


class TestWrapInReplacement:
    def test_construction(self, idgen):
        source = ('fn readLine() { "x" }\n'
                  'example "main" { readLine() }')
        tree, rid = wrap_in_replacement(parse(source),
                                        span_of(source, "readLine()",
                                                occurrence=1),
                                        '"42"', idgen)
        assert (f'__replace("{rid}", {{ readLine() }}, {{ "42" }})'
                in print_program(tree))
        active = evaluate(tree, "main", replacements_active=True)
        assert active.return_value == "42"
        inactive = evaluate(tree, "main", replacements_active=False)
        assert inactive.return_value == "x"

    def test_bad_body_rejected(self, idgen):
        source = 'example "main" { 1 }'
        with pytest.raises(MarkerError):
            wrap_in_replacement(parse(source), span_of(source, "1"), "+",
                                idgen)


class TestCleanup:
    def test_wrap_then_cleanup_is_identity(self, idgen):
        source = 'example "main" { let position = 1; position + 0.3 }'
        tree = parse(source)
        wrapped, _ = wrap_in_variation(tree, span_of(source, "0.3"), idgen)
        assert print_program(cleanup(wrapped)) == print_program(tree)

    def test_no_marker_tokens_after_cleanup(self):
        tree = parse(open("scenarios/mallory.vxl").read())
        printed = print_program(cleanup(tree))
        assert "__variation" not in printed
        assert "__probe" not in printed
        assert "__replace" not in printed
        assert "__" not in printed
        parse(printed)

    def test_examples_preserved(self):
        tree = cleanup(parse('example "main" { __probe("p", 1) }'))
        assert isinstance(tree.items[0], N.ExampleDef)

    def test_nested_fig5_resolution(self):
        tree = cleanup(parse(open("scenarios/fig5.vxl").read()))
        printed = print_program(tree)
        # actives a (with nested c), e, g resolve to 1 + 10, 3, 5
        assert "let x = 1 + 10" in printed
        assert "let y = 3" in printed
        assert "let z = 5" in printed

    def test_cleanup_blocks_with_statements_rejected(self):
        source = ('example "main" { __variation("v1", 0, "", '
                  '__alt("a", false, { let t = 1; t }), '
                  '__alt("b", false, { 2 })) }')
        with pytest.raises(MarkerError):
            cleanup(parse(source))


class TestIdGenerators:
    def test_counting_ids_skip_collisions(self):
        gen = CountingIdGenerator()
        assert gen.variation_id({"v1", "v2"}) == "v3"
        assert gen.probe_id(set()) == "p1"

    def test_random_ids_shape(self):
        import random
        gen = RandomIdGenerator(random.Random(7))
        mid = gen.variation_id(set())
        assert len(mid) == 9
        assert all(c in "0123456789abcdefghijklmnopqrstuvwxyz" for c in mid)


class TestEditInvariants:
    def test_ids_distinct_after_edit_sequence(self, idgen):
        source = 'example "main" { 1 + 2 * 3 }'
        tree, v1 = wrap_in_variation(parse(source), span_of(source, "2 * 3"),
                                     idgen)
        printed = print_program(tree)
        tree, p1 = wrap_in_probe(tree, span_of(printed, "1"), idgen)
        tree = add_alternative(tree, v1, "9")
        ids = N.marker_ids(tree)
        assert ids == {v1, p1}
        parse(print_program(tree))  # reprints and reparses cleanly

    def test_set_alternative_body_rederives_auto_name(self):
        source = ('example "main" { __variation("v1", 0, "", '
                  '__alt("1", false, { 1 }), __alt("2", false, { 2 })) }')
        tree = set_alternative_body(parse(source), "v1", 0, "7 + 1")
        assert find_variation(tree, "v1").alts[0].name == "7 + 1"

    def test_set_alternative_body_keeps_manual_name(self):
        source = ('example "main" { __variation("v1", 0, "", '
                  '__alt("fast", false, { 1 }), __alt("2", false, { 2 })) }')
        tree = set_alternative_body(parse(source), "v1", 0, "7")
        assert find_variation(tree, "v1").alts[0].name == "fast"


def test_semantic_cleanup_identity_random_programs():
    import random
    rng = random.Random(20240817)
    for _ in range(60):
        tree = random_program(rng, allow_errors=True)
        resolved = cleanup(tree)
        direct = evaluate(tree, "main")
        after = evaluate(resolved, "main")
        assert (direct.error is None) == (after.error is None)
        if direct.error is None:
            assert value_equal(direct.return_value, after.return_value)
