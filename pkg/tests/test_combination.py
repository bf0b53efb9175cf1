import random
from fractions import Fraction

import pytest
from hypothesis import given

from intervalbelief.combination import EvidenceItem, mscomb, pool, sscomb
from intervalbelief.errors import TotalConflictError, UsageError
from intervalbelief.intervals import IGNORANCE, Interval, cert, mv, unc
from intervalbelief.language import Atom

from conftest import intervals, random_interval

RAIN = Atom("rain")


def close(i, lo, hi, tol=1e-12):
    return abs(i.lower - lo) <= tol and abs(i.upper - hi) <= tol


def item(rule, lo, hi, source=None, atom=RAIN):
    return EvidenceItem(rule, (), atom, Interval(lo, hi), source or rule)


def dempster(i1, i2):
    """Dempster's rule written out over masses on {P}, {not P}, {P, not P}."""
    m1 = {"P": i1.lower, "N": 1 - i1.upper, "U": i1.upper - i1.lower}
    m2 = {"P": i2.lower, "N": 1 - i2.upper, "U": i2.upper - i2.lower}
    inter = {("P", "P"): "P", ("P", "U"): "P", ("U", "P"): "P", ("N", "N"): "N",
             ("N", "U"): "N", ("U", "N"): "N", ("U", "U"): "U"}
    out = {"P": 0.0, "N": 0.0, "U": 0.0}
    conflict = 0.0
    for a, x in m1.items():
        for b, y in m2.items():
            k = inter.get((a, b))
            if k is None:
                conflict += x * y
            else:
                out[k] += x * y
    z = 1 - conflict
    return out["P"] / z, 1 - out["N"] / z


class TestMscomb:
    @pytest.mark.parametrize("other", [(0.0, 0.8), (0.2, 0.6), (0.4, 0.4)])
    def test_footnote_inputs_against_exact_rationals(self, other):
        F = Fraction
        l1, u1 = F("0.2"), F("0.3")
        l2, u2 = (F(str(x)) for x in other)
        k = 1 - l1 * (1 - u2) - l2 * (1 - u1)
        expected = ((l1 * u2 + l2 * u1 - l1 * l2) / k, u1 * u2 / k)
        got = mscomb(Interval(0.2, 0.3), Interval(*other))
        assert close(got, *map(float, expected))

    def test_reinforcing(self):
        assert close(mscomb(Interval(0.9, 1), Interval(0.9, 1)), 0.99, 1.0)

    def test_total_conflict(self):
        with pytest.raises(TotalConflictError):
            mscomb(Interval(1, 1), Interval(0, 0))

    def test_penguin_is_not_a_conflict(self):
        assert mscomb(Interval(0.999, 1), Interval(0, 0)) == Interval(0, 0)

    def test_equals_dempster_rule(self):
        rng = random.Random(31)
        for _ in range(10_000):
            a, b = random_interval(rng), random_interval(rng)
            try:
                got = mscomb(a, b)
            except TotalConflictError:
                continue
            lo, hi = dempster(a, b)
            assert close(got, lo, hi, 1e-9)


class TestSscomb:
    def test_voting(self):
        assert close(sscomb(Interval(0.9, 1), Interval(0.9, 1)), 0.925, 0.975)

    @pytest.mark.parametrize("other", [(0.3, 0.6), (0.4, 0.4), (0.0, 1.0)])
    def test_ignorance_each_branch(self, other):
        i = Interval(*other)
        assert close(sscomb(IGNORANCE, i), *other)
        assert close(sscomb(i, IGNORANCE), *other)

    def test_certainty_absorbs(self):
        assert sscomb(Interval(0.3, 0.3), Interval(0.5, 0.9)) == Interval(0.3, 0.3)

    def test_point_intervals_average(self):
        assert close(sscomb(Interval(0.2, 0.2), Interval(0.6, 0.6)), 0.4, 0.4)

    def test_cert_weighted_branch(self):
        # tau = 0.8 + 0.6 > 1
        a, b = Interval(0.1, 0.9), Interval(0.2, 0.8)
        m = (0.2 * 0.5 + 0.4 * 0.5) / 0.6
        assert close(sscomb(a, b), m - 0.24, m + 0.24)

    def test_unc_weighted_branch_jump_at_tau_one(self):
        # documented discontinuity: tau exactly 1 uses the harmonic form
        a, b = Interval(0.0, 0.5), Interval(0.5, 1.0)
        assert close(sscomb(a, b), 0.5 - 0.125, 0.5 + 0.125)


# ------------------------------------------------- requirement suite (5.1)

class TestRequirements:
    @given(intervals())
    def test_req2_ignorance_identity_both(self, i):
        for f in (mscomb, sscomb):
            assert close(f(IGNORANCE, i), i.lower, i.upper, 1e-12)
            assert close(f(i, IGNORANCE), i.lower, i.upper, 1e-12)

    @given(intervals(), intervals())
    def test_req4_commutative_exact(self, a, b):
        assert sscomb(a, b) == sscomb(b, a)
        try:
            ab = mscomb(a, b)
        except TotalConflictError:
            with pytest.raises(TotalConflictError):
                mscomb(b, a)
            return
        assert ab == mscomb(b, a)

    def test_req4_mscomb_associative(self):
        rng = random.Random(37)
        checked = 0
        while checked < 10_000:
            a, b, c = (random_interval(rng) for _ in range(3))
            try:
                left = mscomb(mscomb(a, b), c)
                right = mscomb(a, mscomb(b, c))
            except TotalConflictError:
                continue
            assert close(left, right.lower, right.upper, 1e-9)
            checked += 1

    def test_req4_sscomb_associative_when_unc_at_most_half(self):
        rng = random.Random(41)
        for _ in range(10_000):
            a, b, c = (random_interval(rng, max_unc=0.5) for _ in range(3))
            if 0.0 in (unc(a), unc(b), unc(c)) and [unc(a), unc(b), unc(c)].count(0.0) == 3:
                continue  # three point intervals: see the counterexample test below
            left = sscomb(sscomb(a, b), c)
            right = sscomb(a, sscomb(b, c))
            assert close(left, right.lower, right.upper, 1e-9)

    def test_sscomb_three_points_not_associative(self):
        # recorded counterexample: plain averaging of point intervals is order-sensitive
        a, b, c = Interval(0.0, 0.0), Interval(0.5, 0.5), Interval(1.0, 1.0)
        assert sscomb(sscomb(a, b), c) != sscomb(a, sscomb(b, c))

    def test_req5_certainty_absorption_sscomb(self):
        rng = random.Random(43)
        for _ in range(10_000):
            a = rng.random()
            other = random_interval(rng)
            if other.lower == other.upper:
                continue
            assert sscomb(Interval(a, a), other) == Interval(a, a)

    def test_req6a_reinforcement(self):
        assert mv(mscomb(Interval(0.9, 1), Interval(0.8, 1))) > 0.95
        assert mv(mscomb(Interval(0, 0.1), Interval(0, 0.2))) < 0.05

    def test_req1_voting_within_0_02_of_certain_clue(self):
        assert abs(mv(sscomb(Interval(0.5, 0.9), Interval(0.40, 0.41))) - 0.41) <= 0.02

    def test_req3_uncertainty_never_increases(self):
        rng = random.Random(47)
        counterexamples = []
        for _ in range(100_000):
            a, b = random_interval(rng), random_interval(rng)
            bound = min(unc(a), unc(b)) + 1e-12
            if unc(sscomb(a, b)) > bound:
                counterexamples.append(("sscomb", a, b))
            try:
                m = mscomb(a, b)
            except TotalConflictError:
                continue
            if unc(m) > bound:
                counterexamples.append(("mscomb", a, b))
        assert counterexamples == []

    @given(intervals(), intervals())
    def test_req3_certainty_grows(self, a, b):
        try:
            assert cert(mscomb(a, b)) >= max(cert(a), cert(b)) - 1e-12
        except TotalConflictError:
            pass
        if unc(a) + unc(b) <= 1:
            assert cert(sscomb(a, b)) >= max(cert(a), cert(b)) - 1e-12


# ------------------------------------------------------------------ pool

class TestPool:
    def test_rain_case1(self):
        got = pool([item("r1", 0.35, 0.86), item("r3", 0.48, 0.89), item("r4", 0.20, 0.90)])
        assert abs(got.lower - 0.67) <= 5e-3
        assert abs(got.upper - 0.8474209302611670) <= 1e-12  # printed as 0.84 in the source table

    def test_rain_case2(self):
        got = pool([item("r2", 0.05, 0.76), item("r3", 0.35, 0.76)])
        assert close(got, 0.32, 0.64, 5e-3)

    def test_penguin(self):
        assert pool([item("r1", 0.999, 1), item("r2", 0, 0)]) == Interval(0, 0)

    def test_same_source_votes(self):
        items = [item("t1", 0.7, 0.8, "ecg"), item("t2", 0.8, 0.9, "ecg")]
        assert pool(items) == sscomb(Interval(0.7, 0.8), Interval(0.8, 0.9))

    def test_mixed_sources_and_prior(self):
        items = [item("a", 0.7, 0.8, "ecg"), item("b", 0.8, 0.9, "ecg"), item("c", 0.6, 0.9, "blood")]
        prior = Interval(0.5, 0.7)
        ecg = sscomb(Interval(0.7, 0.8), Interval(0.8, 0.9))
        # source order: __facts__, blood, ecg
        expected = mscomb(mscomb(prior, Interval(0.6, 0.9)), ecg)
        assert pool(items, prior) == expected

    def test_order_independent_of_input_order(self):
        items = [item(f"r{n}", 0.1 * n, 0.1 * n + 0.3, "s") for n in range(1, 6)]
        assert pool(items) == pool(list(reversed(items)))

    def test_prior_only(self):
        assert pool([], Interval(0.2, 0.4)) == Interval(0.2, 0.4)

    def test_errors(self):
        with pytest.raises(UsageError):
            pool([])
        with pytest.raises(UsageError):
            pool([item("r1", 0, 1), item("r2", 0, 1, atom=Atom("snow"))])
        with pytest.raises(TotalConflictError) as exc:
            pool([item("r1", 1, 1), item("r2", 0, 0)])
        assert exc.value.atom == RAIN and exc.value.rules == ("r1", "r2")
