from __future__ import division

from collections import OrderedDict
from functools import lru_cache
from itertools import product
from unittest import TestCase

from parameterized import parameterized
import numpy as np
from numpy.testing import assert_almost_equal
import pandas as pd
from pandas.testing import assert_frame_equal

from crossphone.errors import PerError
from crossphone.per import (
    DELETION,
    INSERTION,
    MATCH,
    SUBSTITUTION,
    EditOp,
    align,
    corpus_per,
    per,
)
from crossphone.tokens import load_default_inventory, parse_sequence

rand = np.random.RandomState(1337)

ALPHABET = ('a', 'b', 'c')


def brute_force_distance(ref, hyp):
    """Edit distance by plain recursion over prefixes."""
    @lru_cache(maxsize=None)
    def dist(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        return min(
            dist(i - 1, j - 1) + (ref[i - 1] != hyp[j - 1]),
            dist(i - 1, j) + 1,
            dist(i, j - 1) + 1,
        )
    return dist(len(ref), len(hyp))


def replay(script):
    """Rebuild both sequences from an edit script."""
    ref = [op.ref_token for op in script if op.op != INSERTION]
    hyp = [op.hyp_token for op in script if op.op != DELETION]
    return ref, hyp


def all_sequences(max_length):
    for n in range(max_length + 1):
        for seq in product(ALPHABET, repeat=n):
            yield seq


def prefix_distances(hyp, max_length):
    """
    Yield ``(ref, distance to hyp)`` for every ref up to ``max_length``.

    Refs are visited depth first, each extending its parent's row of
    prefix distances by one token.
    """
    def walk(ref, row):
        yield ref, row[-1]
        if len(ref) == max_length:
            return
        for a in ALPHABET:
            extended = [row[0] + 1]
            for j, h in enumerate(hyp):
                extended.append(min(row[j + 1] + 1, extended[j] + 1,
                                    row[j] + (a != h)))
            yield from walk(ref + (a,), extended)
    return walk((), list(range(len(hyp) + 1)))


class TestAlign(TestCase):
    def assert_consistent(self, ref, hyp, result):
        self.assertEqual(replay(result.script), (list(ref), list(hyp)))
        counts = {op: 0 for op in (MATCH, SUBSTITUTION, DELETION, INSERTION)}
        for op in result.script:
            counts[op.op] += 1
            if op.op == MATCH:
                self.assertEqual(op.ref_token, op.hyp_token)
            if op.op == SUBSTITUTION:
                self.assertNotEqual(op.ref_token, op.hyp_token)
        self.assertEqual(counts[SUBSTITUTION], result.substitutions)
        self.assertEqual(counts[DELETION], result.deletions)
        self.assertEqual(counts[INSERTION], result.insertions)
        self.assertEqual(counts[MATCH], result.matches)
        self.assertEqual(result.hyp_length, len(hyp))

    def test_exhaustive_length_six(self):
        mismatches = []
        for hyp in all_sequences(6):
            for ref, distance in prefix_distances(hyp, 6):
                if ref and align(ref, hyp).errors != distance:
                    mismatches.append((ref, hyp))
        self.assertEqual(mismatches, [])

    def test_exhaustive_small(self):
        sequences = list(all_sequences(4))
        for ref in sequences:
            if not ref:
                continue
            for hyp in sequences:
                result = align(ref, hyp)
                self.assertEqual(result.errors,
                                 brute_force_distance(ref, hyp))
                self.assertEqual(result.ref_length, len(ref))
                self.assert_consistent(ref, hyp, result)

    def test_sampled_length_six(self):
        for _ in range(2000):
            ref = list(rand.choice(ALPHABET, size=rand.randint(1, 7)))
            hyp = list(rand.choice(ALPHABET, size=rand.randint(0, 7)))
            result = align(ref, hyp)
            self.assertEqual(result.errors,
                             brute_force_distance(tuple(ref), tuple(hyp)))
            self.assert_consistent(ref, hyp, result)

    def test_random_long(self):
        for _ in range(1000):
            ref = list(rand.choice(ALPHABET, size=rand.randint(1, 51)))
            hyp = list(rand.choice(ALPHABET, size=rand.randint(0, 51)))
            result = align(ref, hyp)
            self.assertEqual(result.errors,
                             brute_force_distance(tuple(ref), tuple(hyp)))
            self.assert_consistent(ref, hyp, result)

    def test_tie_order(self):
        result = align(['a', 'b'], ['c'])
        self.assertEqual(result.script, (
            EditOp(DELETION, 0, None, 'a', None),
            EditOp(SUBSTITUTION, 1, 0, 'b', 'c'),
        ))

    def test_deletion_then_match(self):
        result = align(['a', 'b'], ['b'])
        self.assertEqual([op.op for op in result.script], [DELETION, MATCH])

    def test_empty_hypothesis(self):
        result = align('a b c', '')
        self.assertEqual(result.deletions, 3)
        self.assertEqual(result.rate, 1.0)

    def test_empty_reference(self):
        with self.assertRaises(PerError):
            align('', 'a')

    def test_phoneme_sequences(self):
        vocab = load_default_inventory()
        ref = parse_sequence('m e -4 tz $ s i -5 tz', vocab)
        hyp = parse_sequence('m e -4 tz $ s i -4 tz', vocab)
        result = align(ref, hyp)
        self.assertEqual(result.substitutions, 1)
        self.assertEqual(result.ref_length, 9)


class TestPer(TestCase):
    @parameterized.expand([
        ('identity', 'm e -4 s | i dʒ', 'm e -4 s | i dʒ', 0.0),
        ('one_substitution', 'a b c d', 'a b x d', 0.25),
        ('one_insertion', 'a b', 'a b c', 0.5),
        ('two_insertions', 'a b', 'a b c d', 1.0),
        ('twice_as_long', 'a b', 'c d e f', 2.0),
        ('all_deleted', 'a b', '', 1.0),
    ])
    def test_per(self, name, ref, hyp, expected):
        assert_almost_equal(per(ref, hyp), expected)

    def test_unclamped(self):
        ref = 'a b c'
        hyp = ' '.join(['x'] * 6)
        self.assertGreaterEqual(per(ref, hyp), 1.0)

    def test_ignore_separators(self):
        assert_almost_equal(per('a $ b', 'a b'), 1 / 3)
        assert_almost_equal(per('a $ b', 'a b', ignore_separators=True), 0.0)
        assert_almost_equal(
            per('a | b', 'a $ b', ignore_separators=True), 0.0)

    def test_bounded_by_lengths(self):
        for _ in range(1000):
            ref = list(rand.choice(ALPHABET, size=rand.randint(1, 21)))
            hyp = list(rand.choice(ALPHABET, size=rand.randint(0, 21)))
            rate = per(ref, hyp)
            self.assertGreaterEqual(rate, 0.0)
            self.assertLessEqual(rate, (len(ref) + len(hyp)) / len(ref))

    def test_zero_only_when_identical(self):
        for _ in range(1000):
            ref = list(rand.choice(ALPHABET, size=rand.randint(1, 9)))
            hyp = list(rand.choice(ALPHABET, size=rand.randint(0, 9)))
            self.assertEqual(per(ref, hyp) == 0.0, ref == hyp)
            self.assertEqual(per(ref, ref), 0.0)


class TestCorpusPer(TestCase):
    pairs = {
        'u1': ('a b c', 'a b c'),
        'u2': ('a b', 'a x'),
    }

    def test_pooled(self):
        rate, breakdown = corpus_per(self.pairs)
        assert_almost_equal(rate, 1 / 5)

        expected = pd.DataFrame(
            [[0, 0, 0, 3, 0.0], [0, 0, 1, 2, 0.5]],
            index=pd.Index(['u1', 'u2'], name='utt_id'),
            columns=['insertions', 'deletions', 'substitutions',
                     'ref_length', 'per'],
        )
        assert_frame_equal(breakdown, expected, check_dtype=False)

    def test_micro_average(self):
        ten = ' '.join(['a'] * 10)
        rate, breakdown = corpus_per([(ten, ten),
                                      (ten, ' '.join(['b'] * 10))])
        assert_almost_equal(rate, 0.5)
        assert_almost_equal(breakdown['per'].values, [0.0, 1.0])

    def test_list_input(self):
        rate, breakdown = corpus_per([('a', 'a'), ('a b', 'b')])
        self.assertEqual(list(breakdown.index), ['0', '1'])
        assert_almost_equal(rate, 1 / 3)

    def test_one_corrupted_token(self):
        refs = {'u{}'.format(i): ' '.join(rand.choice(ALPHABET, size=n))
                for i, n in enumerate([4, 7, 3, 9])}
        clean = {k: (v, v) for k, v in refs.items()}
        base, _ = corpus_per(clean)
        self.assertEqual(base, 0.0)

        corrupted = dict(clean)
        tokens = refs['u1'].split()
        tokens[2] = 'z'
        corrupted['u1'] = (refs['u1'], ' '.join(tokens))
        rate, _ = corpus_per(corrupted)
        assert_almost_equal(rate - base, 1 / (4 + 7 + 3 + 9))

    def test_empty_reference_names_utterance(self):
        with self.assertRaises(PerError) as ctx:
            corpus_per({'good': ('a', 'a'), 'bad': ('', 'a')})
        self.assertEqual(ctx.exception.utterance_id, 'bad')
        self.assertIn('bad', str(ctx.exception))

    def test_no_utterances(self):
        with self.assertRaises(PerError):
            corpus_per([])


class TestCorpusPerPooling(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.pairs = []
        for _ in range(60):
            ref = ' '.join(rand.choice(ALPHABET, size=rand.randint(1, 15)))
            hyp = ' '.join(rand.choice(ALPHABET, size=rand.randint(0, 15)))
            cls.pairs.append((ref, hyp))
        cls.rate, cls.breakdown = corpus_per(cls.pairs)

    def test_shuffled(self):
        order = rand.permutation(len(self.pairs))
        rate, _ = corpus_per([self.pairs[i] for i in order])
        assert_almost_equal(rate, self.rate)

    def test_dict_order(self):
        keyed = OrderedDict(('u{}'.format(i), self.pairs[i])
                            for i in rand.permutation(len(self.pairs)))
        rate, breakdown = corpus_per(keyed)
        assert_almost_equal(rate, self.rate)
        self.assertEqual(list(breakdown.index), list(keyed))

    def test_split_and_merged(self):
        cut = 23
        _, first = corpus_per(self.pairs[:cut])
        _, second = corpus_per(self.pairs[cut:])
        merged = pd.concat([first, second])
        errors = merged[['insertions', 'deletions', 'substitutions']]
        assert_almost_equal(
            errors.values.sum() / merged['ref_length'].sum(), self.rate)
        assert_almost_equal(merged['per'].values,
                            self.breakdown['per'].values)

    def test_is_not_the_mean_of_rates(self):
        rate, breakdown = corpus_per([('a', 'b'), ('a b c d', 'a b c d')])
        assert_almost_equal(rate, 1 / 5)
        assert_almost_equal(breakdown['per'].mean(), 0.5)
