import pytest
from hypothesis import given, strategies as st

from selective_transpile.corpus import (FILLER, SNIPPETS, CorpusSpec, analytic_skips, check_honesty,
                                        generate_corpus, write_corpus)
from selective_transpile.evaluator import run
from selective_transpile.features import ALL_FEATURES, EMPTY, Feature, FeatureSet, LanguageLevel
from selective_transpile.parser import parse

F = Feature
L = LanguageLevel


def test_every_feature_has_snippets():
    assert set(SNIPPETS) == set(ALL_FEATURES)
    assert all(2 <= len(v) <= 3 for v in SNIPPETS.values())


@pytest.mark.parametrize("feature", list(ALL_FEATURES), ids=lambda f: f.name)
def test_snippets_use_exactly_their_feature(feature):
    for i, tpl in enumerate(SNIPPETS[feature]):
        src = tpl.format(n=i, k=3)
        assert parse(src).feature_set == FeatureSet.of(feature), src
        assert run(src).error is None, src


def test_filler_is_es5():
    for i, tpl in enumerate(FILLER):
        src = tpl.format(n=i, k=2)
        assert parse(src).feature_set == EMPTY
        assert run(src).error is None, src


def test_deterministic():
    a = generate_corpus(CorpusSpec(40, seed=5))
    b = generate_corpus(CorpusSpec(40, seed=5))
    c = generate_corpus(CorpusSpec(40, seed=6))
    assert a == b
    assert [g.source for g in a] != [g.source for g in c]


def test_prefix_stability():
    # script i depends only on (seed, i), so a bigger corpus extends a smaller one
    small, big = generate_corpus(CorpusSpec(10, seed=3)), generate_corpus(CorpusSpec(30, seed=3))
    assert big[:10] == small


def test_honesty(sparse_corpus, dense_corpus):
    assert check_honesty(sparse_corpus) == []
    assert check_honesty(dense_corpus) == []


def test_feature_counts_in_range(sparse_corpus, dense_corpus):
    assert all(1 <= len(g.features) <= 3 for g in sparse_corpus)
    assert all(8 <= len(g.features) <= 12 for g in dense_corpus)


def test_zero_features_is_pure_es5():
    corpus = generate_corpus(CorpusSpec(50, (0, 0), seed=1))
    assert all(parse(g.source).feature_set == EMPTY for g in corpus)


def test_generated_scripts_run(sparse_corpus):
    for g in sparse_corpus[:60]:
        assert run(g.source).error is None, g.name


def test_names_and_write(tmp_path):
    corpus = generate_corpus(CorpusSpec(3, seed=0))
    assert [g.name for g in corpus] == ["gen_00000.js", "gen_00001.js", "gen_00002.js"]
    paths = write_corpus(corpus, tmp_path / "c")
    assert [p.read_text(encoding="utf-8") for p in paths] == [g.source for g in corpus]


@pytest.mark.parametrize("bad", [
    dict(script_count=-1), dict(features_per_script=(3, 1)), dict(features_per_script=(0, 13)),
    dict(statements_per_script=(5, 2)),
])
def test_spec_validation(bad):
    with pytest.raises(ValueError):
        CorpusSpec(**bad)


class TestAnalyticSkips:
    def test_hand_counts(self):
        # no features: every one of the 11 in-range passes is skipped
        assert analytic_skips([EMPTY], L.ES5) == (11, 11)
        # async alone also makes the generator pass run
        assert analytic_skips([FeatureSet.of(F.ASYNC_FUNCTIONS)], L.ES5) == (9, 11)
        # rest and spread share one pass
        assert analytic_skips([FeatureSet.of(F.REST_PARAMETERS, F.SPREAD_EXPRESSIONS)], L.ES5) == (10, 11)
        # only the four passes above ES2016 are in range
        assert analytic_skips([FeatureSet.of(F.CLASSES)], L.ES2016) == (3, 3)
        assert analytic_skips([FeatureSet.of(*ALL_FEATURES)], L.ES5) == (0, 11)
        assert analytic_skips([], L.ES5) == (0, 0)

    @given(st.lists(st.sets(st.sampled_from(list(F))), max_size=5))
    def test_additive_over_scripts(self, sets):
        fs = [FeatureSet.of(*s) for s in sets]
        parts = [analytic_skips([f], L.ES5) for f in fs]
        assert analytic_skips(fs, L.ES5) == (sum(p[0] for p in parts), sum(p[1] for p in parts))

    def test_sparsity_knob_is_monotone(self):
        ratios = []
        for lo, hi in [(0, 0), (1, 3), (4, 6), (8, 12), (12, 12)]:
            corpus = generate_corpus(CorpusSpec(150, (lo, hi), seed=2))
            s, c = analytic_skips([g.features for g in corpus], L.ES5)
            ratios.append(s / c)
        assert ratios == sorted(ratios, reverse=True)
        assert ratios[0] == 1.0 and ratios[-1] == 0.0
