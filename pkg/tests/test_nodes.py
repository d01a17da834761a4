import pytest
from hypothesis import given

from selective_transpile.codegen import print_script
from selective_transpile.features import ALL_FEATURES, EMPTY, Feature, FeatureSet
from selective_transpile.nodes import (K, Node, NodeFlag, ScriptNode, VisitAction, check_structure, clone, ident,
                                       is_feature_node, iter_nodes, mk, rewrite, same_tree, scan_counter,
                                       scan_features, traverse)
from selective_transpile.parser import parse
from strategies import snippet_programs

F = Feature


def count_all(root):
    return traverse(root, lambda n: None)


def independent_scan(root):
    """Oracle: apply the anchor table node by node during a plain traversal."""
    found = set()

    def visit(n):
        for f in ALL_FEATURES:
            if is_feature_node(n, f):
                found.add(f)
    traverse(root, visit)
    return FeatureSet(found)


class TestTraverse:
    def test_single_script_node(self):
        assert count_all(mk(K.SCRIPT)) == 1

    def test_exponent_statement_has_five_nodes(self):
        # SCRIPT > EXPR_STMT > BINARY_OP(**) > IDENTIFIER a, IDENTIFIER b
        assert count_all(parse("a ** b;").root) == 5

    def test_skip_block_subtree(self):
        root = parse("{ var a = 1; f(a); }").root
        seen = []

        def visit(n):
            seen.append(n.kind)
            return VisitAction.SKIP_SUBTREE if n.kind is K.BLOCK else None
        assert traverse(root, visit) == 2
        assert seen == [K.SCRIPT, K.BLOCK]

    def test_preorder(self):
        order = []
        traverse(parse("f(a, b);").root, lambda n: order.append(n.value or n.kind.name))
        assert order == ["SCRIPT", "EXPR_STMT", "CALL", "f", "a", "b"]

    def test_visit_count_equals_node_count(self, golden):
        for name, src in golden:
            root = parse(src, name).root
            assert count_all(root) == sum(1 for _ in iter_nodes(root)), name


class TestAnchors:
    def test_optional_chain_node(self):
        chain = parse("a?.b;").root.children[0].children[0]
        assert chain.kind is K.OPTIONAL_CHAIN
        assert is_feature_node(chain, F.OPTIONAL_CHAINING)

    def test_identifier_is_not_a_class(self):
        assert not is_feature_node(ident("A"), F.CLASSES)

    def test_compound_exponent_assignment(self):
        node = parse("x **= 2;").root.children[0].children[0]
        assert node.kind is K.ASSIGN and node.value == "**="
        assert is_feature_node(node, F.EXPONENT_OPERATOR)

    def test_plain_assignment_is_not_an_anchor(self):
        node = parse("x = 2;").root.children[0].children[0]
        assert not any(is_feature_node(node, f) for f in ALL_FEATURES)

    def test_async_and_generator_flags(self):
        fn = mk(K.FUNCTION_EXPR, mk(K.PARAM_LIST), mk(K.BLOCK), flags=NodeFlag.ASYNC)
        assert is_feature_node(fn, F.ASYNC_FUNCTIONS) and not is_feature_node(fn, F.GENERATORS)
        fn.flags = NodeFlag.GENERATOR
        assert is_feature_node(fn, F.GENERATORS) and not is_feature_node(fn, F.ASYNC_FUNCTIONS)


class TestScan:
    def test_es5_is_empty(self):
        assert scan_features(parse("var x = 1;").root) == EMPTY

    def test_async_arrow_example(self):
        got = scan_features(parse("const f = async (a = 1) => a ?? 0;").root)
        assert got == FeatureSet.of(F.BLOCK_SCOPED_DECLARATIONS, F.ASYNC_FUNCTIONS, F.ARROW_FUNCTIONS,
                                    F.DEFAULT_PARAMETERS, F.NULLISH_COALESCING)

    def test_optional_without_classes(self):
        got = scan_features(parse("var v = o?.p;").root)
        assert F.OPTIONAL_CHAINING in got and F.CLASSES not in got

    def test_scan_is_pure_and_idempotent(self, golden):
        for name, src in golden:
            s = parse(src, name)
            before = print_script(s)
            assert scan_features(s.root) == scan_features(s.root)
            assert print_script(s) == before

    def test_scan_counter_bumps_once_per_scan(self):
        root = parse("a ?? b;").root
        start = scan_counter.count
        scan_features(root)
        scan_features(root)
        assert scan_counter.count - start == 2

    def test_matches_independent_oracle_on_corpus(self, mixed_corpus):
        for name, src in mixed_corpus:
            root = parse(src, name).root
            assert scan_features(root) == independent_scan(root), name


@given(snippet_programs())
def test_scan_matches_oracle_on_snippets(program):
    root = parse(program[0]).root
    assert scan_features(root) == independent_scan(root)


class TestStructure:
    def test_parsed_trees_are_well_formed(self, mixed_corpus):
        for name, src in mixed_corpus:
            assert check_structure(parse(src, name).root) == [], name

    def test_arity_violation_is_reported(self):
        bad = mk(K.SCRIPT, mk(K.IF))
        assert any("IF" in p for p in check_structure(bad))

    def test_shared_node_is_reported(self):
        x = ident("x")
        bad = mk(K.SCRIPT, mk(K.EXPR_STMT, x), mk(K.EXPR_STMT, x))
        assert any("shared" in p for p in check_structure(bad))

    def test_missing_value_is_reported(self):
        bad = mk(K.SCRIPT, mk(K.EXPR_STMT, Node(K.IDENTIFIER)))
        assert check_structure(bad)

    def test_clone_is_deep_and_equal(self):
        root = parse("var a = [1, {b: `x${y}`}];").root
        copy = clone(root)
        assert same_tree(root, copy)
        copy.children[0].children[0].children[0].value = "renamed"
        assert not same_tree(root, copy)

    def test_script_copy_is_independent(self):
        s = parse("a ** b;")
        c = s.copy()
        c.root.children.clear()
        c.helpers_used.add("$inherits")
        assert len(s.root.children) == 1 and not s.helpers_used

    def test_fresh_temps_are_monotonic(self):
        s = ScriptNode(mk(K.SCRIPT), "t.js")
        assert [s.fresh_temp() for _ in range(3)] == ["$t0", "$t1", "$t2"]


class TestRewrite:
    def test_replace_and_splice(self):
        root = parse("a; b;").root

        def fn(n):
            if n.kind is K.IDENTIFIER and n.value == "a":
                return ident("z")
            if n.kind is K.EXPR_STMT and n.children[0].value == "b":
                return [mk(K.EMPTY), mk(K.EMPTY)]
            return None
        visited = rewrite(root, fn)
        assert visited == 5
        assert [c.kind for c in root.children] == [K.EXPR_STMT, K.EMPTY, K.EMPTY]
        assert root.children[0].children[0].value == "z"

    def test_post_order(self):
        order = []
        rewrite(parse("f(x);").root, lambda n: order.append(n.value or n.kind.name))
        assert order == ["f", "x", "CALL", "EXPR_STMT"]


@pytest.mark.parametrize("kind", list(K))
def test_every_kind_has_an_arity_contract(kind):
    from selective_transpile.nodes import ARITY
    lo, hi = ARITY[kind]
    assert lo >= 0 and (hi is None or hi >= lo)
