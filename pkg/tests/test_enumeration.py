"""Tests for class enumeration, refined counting, and simples generation.

Known sequences (large/little Schroder, Catalan, the 4132-class counts)
were derived independently from their generating functions and frozen;
small lengths are checked against the brute-force S_n filter.
"""

import json

import pytest

from helpers import brute_class
from permlab.enumeration import (
    CapacityError,
    PatternBasis,
    RefinedCountTable,
    class_levels,
    count_class,
    enumerate_class,
    enumerate_simples,
    export_counts,
    refined_count,
    simples_by_insertion,
    _extend_level,
)
from permlab.perms import avoids_all, is_simple, parse_permutation, standardize

P = parse_permutation

SCHRODER = [1, 1, 2, 6, 22, 90, 394, 1806, 8558, 41586, 206098]
CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796]
A033321 = [1, 1, 2, 6, 21, 79, 311, 1265, 5275, 22431, 96900]
NEAR_MISS = [1, 1, 2, 6, 22, 90, 395, 1823]

SCHRODER_TAUS = ["254613", "524361", "546132", "263514"]


class TestBasis:
    def test_normalization_drops_dominated(self):
        b = PatternBasis([P("2143"), P("21435"), P("2143")])
        assert b.patterns == (P("2143"),)

    def test_canonical_order(self):
        b = PatternBasis.from_text("54321,3142,2143")
        assert b.patterns == (P("2143"), P("3142"), P("54321"))

    def test_subpattern_wins_over_superpattern(self):
        # 2143 and 3142 both contain 132, so only 132 survives
        b = PatternBasis.from_text("3142,2143,132")
        assert b.patterns == (P("132"),)

    def test_mixed_token_rejected(self):
        with pytest.raises(ValueError, match="digit string"):
            PatternBasis.from_text("214 3,3142")

    def test_rejects_empty_pattern(self):
        with pytest.raises(ValueError):
            PatternBasis([()])

    def test_comma_splits_into_digit_string_patterns(self):
        b = PatternBasis.from_text("321,1234")
        assert b.patterns == (P("321"), P("1234"))

    def test_each_token_validated(self):
        with pytest.raises(ValueError, match="missing value 3"):
            PatternBasis.from_text("214,3142")

    def test_rejects_non_permutation_token(self):
        with pytest.raises(ValueError, match="duplicate value"):
            PatternBasis.from_text("2143,3142,254614")


class TestEnumerate:
    def test_no_restriction_at_small_length(self):
        got = enumerate_class(PatternBasis.from_text("2143,3142"), 3)
        assert len(got) == 6

    def test_single_short_pattern(self):
        assert enumerate_class(PatternBasis.from_text("12"), 4) == [P("4321")]
        assert count_class(PatternBasis.from_text("12"), 4) == [1, 1, 1, 1, 1]

    def test_length_one(self):
        assert enumerate_class(PatternBasis.from_text("2143"), 1) == [(1,)]

    def test_matches_brute_force(self):
        bases = [
            "2143,3142,254613", "2143,3142,524361", "2143,3142,546132",
            "2143,3142,263514", "2143,3142,4132", "132", "2413,3142",
        ]
        for text in bases:
            basis = PatternBasis.from_text(text)
            for n in range(7):
                assert enumerate_class(basis, n) == brute_class(basis.patterns, n)

    def test_full_complement_check(self):
        # every non-member of S_n fails avoids_all (n <= 7, one basis)
        from helpers import all_perms

        basis = PatternBasis.from_text("2143,3142,254613")
        for n in range(8):
            members = set(enumerate_class(basis, n))
            for p in all_perms(n):
                assert (p in members) == avoids_all(p, basis.patterns)

    def test_deletion_closed(self):
        basis = PatternBasis.from_text("2143,3142,263514")
        levels = class_levels(basis, 7)
        for n in range(1, 8):
            below = set(levels[n - 1])
            for p in levels[n]:
                i = p.index(n)
                assert standardize(p[:i] + p[i + 1:]) in below

    def test_counts_match_lengths(self):
        basis = PatternBasis.from_text("2143,3142,546132")
        counts = count_class(basis, 7)
        for n in range(8):
            assert counts[n] == len(enumerate_class(basis, n))

    def test_generic_and_fast_checkers_agree(self):
        basis = PatternBasis.from_text("2143,3142,4132")
        level = [()]
        for n in range(1, 8):
            fast = sorted(_extend_level(level, basis.patterns))
            slow = sorted(_extend_level(level, basis.patterns, generic_only=True))
            assert fast == slow
            level = fast

    def test_parallel_matches_sequential(self):
        basis = PatternBasis.from_text("2413,3142")
        seq = [len(lv) for lv in class_levels(basis, 7)]
        from permlab import enumeration

        enumeration._LEVELS_CACHE.pop(basis.patterns, None)
        par_levels = class_levels(basis, 7, parallelism=2)
        assert [len(lv) for lv in par_levels] == seq
        for lv in par_levels:
            assert lv == sorted(lv)

    def test_capacity_error(self):
        from permlab import enumeration

        basis = PatternBasis.from_text("654321")
        enumeration._LEVELS_CACHE.pop(basis.patterns, None)
        with pytest.raises(CapacityError) as exc:
            class_levels(basis, 6, cap=100)
        assert exc.value.n <= 6
        enumeration._LEVELS_CACHE.pop(basis.patterns, None)


class TestKnownCounts:
    def test_schroder_classes_to_eight(self):
        for tau in SCHRODER_TAUS:
            basis = PatternBasis.from_text(f"2143,3142,{tau}")
            assert count_class(basis, 8) == SCHRODER[:9], tau

    def test_near_miss(self):
        assert count_class(PatternBasis.from_text("2143,3142"), 7) == NEAR_MISS

    def test_catalan(self):
        assert count_class(PatternBasis.from_text("132"), 9) == CATALAN[:10]

    def test_4132_class(self):
        assert count_class(PatternBasis.from_text("2143,3142,4132"), 8) == A033321[:9]

    def test_classic_schroder_class(self):
        assert count_class(PatternBasis.from_text("2413,3142"), 8) == SCHRODER[:9]

    def test_count_cache_round_trip(self, tmp_path):
        basis = PatternBasis.from_text("2413,3142")
        first = count_class(basis, 6, cache_dir=str(tmp_path))
        assert (tmp_path / "counts.txt").exists()
        again = count_class(basis, 6, cache_dir=str(tmp_path))
        assert first == again == SCHRODER[:7]


class TestRefinedCounts:
    def test_bond_lrmin_over_132_ending_max(self):
        basis = PatternBasis.from_text("132")
        table = refined_count(basis, 4, ["bond", "lr-min"],
                              "last-entry-equals-length")
        assert table.get(2, (1, 1)) == 1  # only 12

    def test_leading_maxima_identity_row(self):
        basis = PatternBasis.from_text("2143,3142,4132")
        table = refined_count(basis, 4, ["leading-maxima"])
        assert table.get(3, (3,)) == 1  # only 123 has all leading maxima

    def test_totals_match_plain_counts(self):
        basis = PatternBasis.from_text("2143,3142,254613")
        table = refined_count(basis, 6, ["leading-maxima", "bond"])
        counts = count_class(basis, 6)
        for n in range(7):
            assert table.total(n) == counts[n]

    def test_stat_values_attainable(self):
        basis = PatternBasis.from_text("2143,3142")
        table = refined_count(basis, 6, ["leading-maxima", "bond", "lr-min"])
        for n, (ell, bond, lrmin), _ in table.rows():
            assert 0 <= ell <= n
            assert 0 <= bond <= max(0, n - 1)
            assert 0 <= lrmin <= n

    def test_unknown_ids_rejected(self):
        basis = PatternBasis.from_text("132")
        with pytest.raises(ValueError, match="unknown statistic"):
            refined_count(basis, 3, ["descents"])
        with pytest.raises(ValueError, match="unknown filter"):
            refined_count(basis, 3, ["bond"], "last-is-max")


class TestExport:
    def test_csv_plain_counts(self):
        basis = PatternBasis.from_text("2413,3142")
        table = refined_count(basis, 3, [])
        lines = export_counts(table, "csv").decode().splitlines()
        assert lines[:5] == ["n,count", "0,1", "1,1", "2,2", "3,6"]

    def test_empty_table_header_only(self):
        table = RefinedCountTable(PatternBasis.from_text("132"), 0, ("bond",))
        assert export_counts(table, "csv").decode() == "n,bond,count\n"

    def test_json_round_trip(self):
        basis = PatternBasis.from_text("132")
        table = refined_count(basis, 5, ["bond", "lr-min"], "first-entry-not-one")
        again = RefinedCountTable.from_json(export_counts(table, "json").decode())
        assert again == table

    def test_unknown_format(self):
        table = refined_count(PatternBasis.from_text("132"), 2, [])
        with pytest.raises(ValueError, match="unknown format"):
            export_counts(table, "xml")

    def test_json_is_deterministic(self):
        basis = PatternBasis.from_text("132")
        a = export_counts(refined_count(basis, 5, ["bond"]), "json")
        b = export_counts(refined_count(basis, 5, ["bond"]), "json")
        assert a == b
        json.loads(a)


class TestSimples:
    def test_simples_of_4132_class(self):
        basis = PatternBasis.from_text("2143,3142,4132")
        assert enumerate_simples(basis, 4) == [P("2413")]
        assert enumerate_simples(basis, 3) == []

    def test_no_simples_of_length_three_any_basis(self):
        assert enumerate_simples(PatternBasis.from_text("2143,3142"), 3) == []

    def test_insertion_construction_base_case(self):
        assert simples_by_insertion(4) == [P("2413")]

    def test_insertion_construction_below_four_rejected(self):
        with pytest.raises(ValueError):
            simples_by_insertion(3)

    def test_insertion_matches_enumeration(self):
        basis = PatternBasis.from_text("2143,3142,4132")
        for n in range(4, 10):
            assert simples_by_insertion(n) == enumerate_simples(basis, n)

    def test_construction_output_is_simple_and_in_class(self):
        basis = PatternBasis.from_text("2143,3142,4132")
        for n in range(4, 8):
            for sigma in simples_by_insertion(n):
                assert is_simple(sigma)
                assert avoids_all(sigma, basis.patterns)

    def test_worked_example_with_four_insertions(self):
        # 132-avoider 84536127 with insertions below rows 2, 3, 5, 6
        sigma = (2, 4, 7, 9, 12, 6, 8, 5, 10, 1, 3, 11)
        assert sigma in simples_by_insertion(12)
        assert is_simple(sigma)
        assert avoids_all(sigma, PatternBasis.from_text("2143,3142,4132").patterns)
