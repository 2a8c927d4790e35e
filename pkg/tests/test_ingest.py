import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zpeff.errors import DegenerateError, DomainError, EmptyInputError, InsufficientDataError, ValidationError
from zpeff.ingest import (
    RankEntry,
    RankFrequency,
    SampleSet,
    TokenizerOptions,
    default_zipf_window,
    detokenize,
    empirical_distribution,
    empirical_gini,
    fit_pareto_hill,
    fit_zipf,
    parse_numbers,
    read_count_table,
    read_samples,
    tokenize_corpus,
    top_share,
)
from zpeff.pareto import ParetoModel, gini_from_beta


def _entries(rf):
    return [tuple(e) for e in rf.entries]


def test_tokenize_examples():
    assert _entries(tokenize_corpus("a a b")) == [(1, "a", 2), (2, "b", 1)]
    assert _entries(tokenize_corpus("A a. a! b b")) == [(1, "a", 3), (2, "b", 2)]
    assert _entries(tokenize_corpus("b a")) == [(1, "a", 1), (2, "b", 1)]


def test_tokenize_unicode_and_bytes():
    rf = tokenize_corpus("Straße STRASSE émigré_x 42 42".encode())
    toks = dict((e.token, e.frequency) for e in rf.entries)
    assert toks == {"strasse": 2, "émigré": 1, "x": 1, "42": 2}
    rf = tokenize_corpus(b"ok \xff ok")
    assert _entries(rf) == [(1, "ok", 2)]
    assert _entries(tokenize_corpus("ab a ab", TokenizerOptions(min_length=2))) == [(1, "ab", 2)]
    with pytest.raises(EmptyInputError):
        tokenize_corpus(" ,;. ")


@settings(max_examples=100)
@given(st.text())
def test_tokenize_idempotent_on_dump(text):
    try:
        rf = tokenize_corpus(text)
    except EmptyInputError:
        return
    assert tokenize_corpus(detokenize(rf)) == rf
    assert tokenize_corpus(text) == rf


def test_rank_frequency_invariants_and_csv():
    with pytest.raises(ValidationError):
        RankFrequency((RankEntry(2, "a", 1),))
    with pytest.raises(ValidationError):
        RankFrequency(((1, "a", 1), (2, "b", 2)))
    rf = tokenize_corpus("x y y z z z")
    assert rf.total == 6
    assert RankFrequency.from_csv(rf.to_csv()) == rf
    assert rf.to_csv().splitlines()[0] == "rank,token,frequency"


def test_empirical_distribution():
    rf = RankFrequency(((1, "a", 2), (2, "b", 1)))
    assert empirical_distribution(rf).probs.tolist() == pytest.approx([2 / 3, 1 / 3])
    assert empirical_distribution(RankFrequency(((1, "z", 9),))).probs.tolist() == [1.0]
    with pytest.raises(EmptyInputError):
        empirical_distribution(RankFrequency(()))


def test_empirical_distribution_large_sum():
    rng = np.random.default_rng(0)
    rf = RankFrequency.from_frequencies(rng.integers(1, 1000, size=100_000))
    assert abs(math.fsum(empirical_distribution(rf).probs) - 1) <= 1e-12


def test_fit_zipf_noiseless_integer_counts():
    exact = RankFrequency.from_frequencies([round(1e9 / r) for r in range(1, 51)])
    fit = fit_zipf(exact, (1, 50))
    assert fit.alpha == pytest.approx(1.0, abs=1e-8)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("alpha,x1", [(1.0, 100.0), (0.8, 100.0), (1.7, 3.0)])
def test_fit_zipf_exact_on_power_table(alpha, x1):
    rf = RankFrequency(tuple(RankEntry(r, None, x1 / r**alpha) for r in range(1, 51)))
    fit = fit_zipf(rf, (1, 50))
    assert fit.alpha == pytest.approx(alpha, abs=1e-10)
    assert fit.x1 == pytest.approx(x1, rel=1e-10)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)


def test_fit_zipf_window_rules():
    assert default_zipf_window(1000) == (5, 100)
    assert default_zipf_window(60) == (5, 50)
    assert default_zipf_window(5) == (1, 5)
    rf = tokenize_corpus("a a a b b c")
    with pytest.raises(InsufficientDataError):
        fit_zipf(rf, (1, 2))
    assert fit_zipf(rf).window == (1, 3)


def test_fit_zipf_synthetic_corpus():
    beta = 1.25  # ranked Pareto values follow a rank law with alpha = 1/beta
    x = ParetoModel(beta).sample(10_000, seed=1)
    rf = RankFrequency.from_frequencies(np.floor(100 * x).astype(int))
    assert fit_zipf(rf).alpha == pytest.approx(1 / beta, rel=0.10)


def test_hill_examples():
    h = fit_pareto_hill(SampleSet([1.0, math.e], x_min=1.0))
    assert h.beta == pytest.approx(2.0)
    assert h.std_err == pytest.approx(2.0 / math.sqrt(2))
    with pytest.raises(DegenerateError):
        fit_pareto_hill(SampleSet([2.0, 2.0, 2.0]))
    with pytest.raises(ValidationError):
        SampleSet([1.0, 2.0], x_min=1.5)
    with pytest.raises(InsufficientDataError):
        fit_pareto_hill(SampleSet([3.0]))
    x = ParetoModel(2.0).sample(100_000, seed=3)
    h = fit_pareto_hill(SampleSet(x, x_min=1.0))
    assert abs(h.beta - 2.0) < 3 * h.std_err


def test_gini_examples():
    assert empirical_gini(SampleSet([3.0] * 10)) == pytest.approx(0.0, abs=1e-15)
    assert empirical_gini([1e-12, 1.0]) == pytest.approx(0.5, abs=1e-9)
    with pytest.raises(DomainError):
        empirical_gini([0.0, 0.0])
    g = empirical_gini(SampleSet(ParetoModel(2.0).sample(100_000, seed=0)))
    assert g == pytest.approx(1 / 3, abs=0.01)


@settings(max_examples=100)
@given(st.lists(st.floats(0.01, 1000), min_size=2, max_size=40))
def test_gini_sorted_form_equals_double_sum(xs):
    x = np.array(xs)
    double = np.abs(x[:, None] - x[None, :]).sum() / (2 * x.size**2 * x.mean())
    assert empirical_gini(x) == pytest.approx(double, abs=1e-12)
    assert 0 <= empirical_gini(x) < 1


@pytest.mark.parametrize("beta", [1.5, 2.0, 4.0])
def test_hill_gini_pipeline(beta):
    s = SampleSet(ParetoModel(beta).sample(100_000, seed=0), x_min=1.0)
    assert gini_from_beta(fit_pareto_hill(s).beta) == pytest.approx(empirical_gini(s), abs=0.02)


def test_top_share():
    rf = RankFrequency.from_frequencies([80, 5, 5, 5, 5])
    assert top_share(rf, 0.2) == pytest.approx(0.8)
    with pytest.raises(DomainError):
        top_share(rf, 0.0)


def test_file_readers(tmp_path):
    f = tmp_path / "s.txt"
    f.write_text("# header\n 1.5 \n\n2.5 # trailing\n3\n")
    assert read_samples(f).values.tolist() == [1.5, 2.5, 3.0]
    with pytest.raises(ValidationError):
        parse_numbers("1\nabc\n")
    c = tmp_path / "c.csv"
    c.write_text("token,count\nthe,10\nof,4\nthe,1\n")
    assert _entries(read_count_table(c)) == [(1, "the", 11), (2, "of", 4)]
    bad = tmp_path / "bad.csv"
    bad.write_text("the,10\nof,x\n")
    with pytest.raises(ValidationError):
        read_count_table(bad)
