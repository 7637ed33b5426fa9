from __future__ import division

import io
import json
import os
import shutil
import tempfile
from unittest import TestCase

from parameterized import parameterized
import numpy as np
import pandas as pd

from crossphone import __version__
from crossphone.cli import read_pcm, run
from crossphone.corpus import CorpusRecord, read_manifest, write_manifest
from crossphone.utils import data_path

rand = np.random.RandomState(1337)


class CliTestCase(TestCase):
    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def path(self, *names):
        return os.path.join(self.tmpdir, *names)

    def run_cli(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        status = run(list(argv), stdout=out, stderr=err)
        return status, out.getvalue(), err.getvalue()

    def build_corpus(self, seed=0, *extra):
        out_dir = self.path('corpus')
        status, out, _ = self.run_cli('corpus', 'build', '--out-dir', out_dir,
                                      '--seed', str(seed), *extra)
        self.assertEqual(status, 0)
        return out_dir, out


class TestTextCommands(CliTestCase):
    def test_parse(self):
        status, out, err = self.run_cli('parse', 'in bóc')
        self.assertEqual((status, out, err), (0, 'i nz $ b o -4 kz\n', ''))

    def test_parse_json(self):
        status, out, _ = self.run_cli('parse', 'in bóc', '--format', 'json')
        self.assertEqual(status, 0)
        self.assertEqual(json.loads(out),
                         {'text': 'in bóc', 'phonemes': 'i nz $ b o -4 kz'})

    def test_g2p(self):
        status, out, _ = self.run_cli('g2p', 'ˈmes.ɪdʒ')
        self.assertEqual((status, out), (0, 'm e -4 s | i dʒ\n'))

    def test_vietlish_from_lexicon(self):
        status, out, _ = self.run_cli('vietlish', 'message')
        self.assertEqual((status, out),
                         (0, 'mét xít\tm e -4 tz $ s i -5 tz\n'))

    def test_vietlish_rules_only(self):
        status, out, _ = self.run_cli('vietlish', 'inbox', '--ipa',
                                      'ˈɪn.bɒks', '--rules-only')
        self.assertEqual((status, out), (0, 'in bóc\ti nz $ b o -4 kz\n'))

    def test_inventory_check(self):
        status, out, _ = self.run_cli('inventory', 'check', 'default')
        self.assertEqual((status, out), (0, '53 Vietnamese categories: OK\n'))

    def test_inventory_check_json(self):
        status, out, _ = self.run_cli('inventory', 'check', 'default',
                                      '--format', 'json')
        payload = json.loads(out)
        self.assertEqual(payload['tokens'], 73)
        self.assertEqual(payload['vietnamese_categories'], 53)


class TestErrors(CliTestCase):
    @parameterized.expand([
        ('unknown_command', ['frobnicate']),
        ('no_command', []),
        ('missing_argument', ['per', '--ref', 'r.jsonl']),
        ('bad_split', ['per', '--ref', 'a', '--hyp', 'b', '--split', '7']),
        ('bad_format', ['parse', 'in', '--format', 'xml']),
    ])
    def test_usage(self, name, argv):
        status, out, err = self.run_cli(*argv)
        self.assertEqual(status, 2)
        self.assertEqual(out, '')
        self.assertIn('usage:', err)

    def test_version(self):
        status, out, _ = self.run_cli('--version')
        self.assertEqual(status, 0)
        self.assertIn(__version__, out)

    @parameterized.expand([
        ('unparseable', ['parse', 'xin chào fox'], 'E-PARSE: '),
        ('phonotactics', ['parse', 'bac'], 'E-PHONOTACTICS: '),
        ('ipa', ['g2p', 'meŝ'], 'E-IPA: '),
        ('coverage', ['g2p', 'lɒx'], 'E-COVERAGE: '),
        ('not_in_lexicon', ['vietlish', 'zyzzyva'], 'E-CONFIG: '),
        ('localization', ['vietlish', 'loch', '--ipa', 'lɒx', '--rules-only'],
         'E-LOCALIZATION: '),
    ])
    def test_errors(self, name, argv, prefix):
        status, out, err = self.run_cli(*argv)
        self.assertEqual(status, 1)
        self.assertEqual(out, '')
        self.assertTrue(err.startswith(prefix), err)

    def test_missing_file(self):
        status, _, err = self.run_cli('corpus', 'stats',
                                      self.path('missing.jsonl'))
        self.assertEqual(status, 1)
        self.assertTrue(err.startswith('E-IO: '), err)


class TestCorpusCommands(CliTestCase):
    def test_build(self):
        out_dir, out = self.build_corpus()
        lines = [line.split('\t') for line in out.splitlines()]
        self.assertEqual([(s, n) for s, n, _ in lines],
                         [('en_native', '100'), ('vietlish', '100'),
                          ('iev', '20'), ('rejects', '0')])
        for subset, _, path in lines[:3]:
            self.assertEqual(path, os.path.join(out_dir, subset + '.jsonl'))
            self.assertTrue(os.path.exists(path))
        self.assertEqual(lines[3][2], os.path.join(out_dir, 'rejects.tsv'))
        report = pd.read_csv(lines[3][2], sep='\t')
        self.assertEqual(list(report.columns), ['subset', 'word', 'message'])
        self.assertEqual(len(report), 0)

    def test_rejects_report(self):
        with io.open(data_path('lexicon.tsv'), encoding='utf-8') as f:
            text = f.read()
        lexicon = self.path('lexicon.tsv')
        with io.open(lexicon, 'w', encoding='utf-8') as f:
            f.write(text.rstrip('\n') + '\nloch\tlɒx\n')

        out_dir, out = self.build_corpus(0, '--lexicon', lexicon)
        lines = dict((s, (n, path)) for s, n, path in
                     (line.split('\t') for line in out.splitlines()))
        self.assertEqual(lines['en_native'][0], '100')
        self.assertEqual(lines['vietlish'][0], '100')
        self.assertEqual(lines['rejects'][0], '3')

        report = pd.read_csv(lines['rejects'][1], sep='\t')
        self.assertEqual(list(report['subset']),
                         ['en_native', 'vietlish', 'iev'])
        self.assertEqual(set(report['word']), {'loch'})
        self.assertFalse(report['message'].str.contains('\n').any())

    @parameterized.expand([('ratio', '7:3'), ('named', 'train:test=7:3')])
    def test_build_split(self, name, ratio):
        out_dir, out = self.build_corpus(0, '--split', ratio)
        counts = dict((s, int(n)) for s, n, _ in
                      (line.split('\t') for line in out.splitlines()))
        for subset in ('en_native', 'vietlish', 'iev'):
            train = read_manifest(
                os.path.join(out_dir, subset + '.train.jsonl'))
            test = read_manifest(os.path.join(out_dir, subset + '.test.jsonl'))
            self.assertEqual(len(train), counts[subset + '.train'])
            self.assertEqual(len(test), counts[subset + '.test'])
            self.assertEqual(len(train) + len(test), counts[subset])
            self.assertFalse({r.id for r in train} & {r.id for r in test})
        self.assertGreater(counts['vietlish.test'], 0)
        self.assertGreater(counts['vietlish.train'], counts['vietlish.test'])

    def test_build_bad_split(self):
        status, out, err = self.run_cli('corpus', 'build', '--out-dir',
                                        self.path('corpus'), '--split', '7-3')
        self.assertEqual((status, out), (2, ''))
        self.assertIn('usage:', err)
    def test_build_is_reproducible(self):
        out_dir, _ = self.build_corpus(seed=11)
        with io.open(os.path.join(out_dir, 'iev.jsonl'), 'rb') as f:
            first = f.read()
        shutil.rmtree(out_dir)
        self.build_corpus(seed=11)
        with io.open(os.path.join(out_dir, 'iev.jsonl'), 'rb') as f:
            self.assertEqual(f.read(), first)

    def test_stats(self):
        out_dir, _ = self.build_corpus()
        manifests = [os.path.join(out_dir, name + '.jsonl')
                     for name in ('en_native', 'vietlish', 'iev')]
        status, out, _ = self.run_cli('corpus', 'stats', *manifests)
        self.assertEqual(status, 0)
        rows = [line.split('\t') for line in out.splitlines()]
        self.assertEqual([(s, n) for s, n, _ in rows],
                         [('en_native', '100'), ('vietlish', '100'),
                          ('iev', '20'), ('total', '220')])

    def test_validate(self):
        out_dir, _ = self.build_corpus()
        manifest = os.path.join(out_dir, 'vietlish.jsonl')
        status, out, _ = self.run_cli('corpus', 'validate', manifest)
        self.assertEqual((status, out), (0, manifest + ': OK\n'))

    def test_validate_reports_problems(self):
        bad = self.path('bad.jsonl')
        write_manifest([CorpusRecord('x', 'vietlish', 'x', 'a | b', 'x.wav',
                                     1.0)], bad)
        status, out, err = self.run_cli('corpus', 'validate', bad)
        self.assertEqual(status, 1)
        self.assertTrue(out.startswith(bad + ': line 1: x: '), out)
        self.assertTrue(err.startswith('E-MANIFEST: '), err)


class TestPerCommand(CliTestCase):
    def test_identical_manifests(self):
        out_dir, _ = self.build_corpus()
        manifest = os.path.join(out_dir, 'en_native.jsonl')
        status, out, _ = self.run_cli('per', '--ref', manifest,
                                      '--hyp', manifest)
        self.assertEqual((status, out), (0, '0.0\n'))

    def test_one_substitution(self):
        ref, hyp = self.path('ref.jsonl'), self.path('hyp.jsonl')
        write_manifest([
            CorpusRecord('u1', 'en_native', 'a', 'a b c d', 'u1.wav', 1.0),
            CorpusRecord('u2', 'en_native', 'b', 'a b c d', 'u2.wav', 1.0),
        ], ref)
        write_manifest([
            CorpusRecord('u1', 'en_native', 'a', 'a b c d', 'u1.wav', 1.0),
            CorpusRecord('u2', 'en_native', 'b', 'a b x d', 'u2.wav', 1.0),
        ], hyp)
        status, out, _ = self.run_cli('per', '--ref', ref, '--hyp', hyp,
                                      '--per-utterance')
        self.assertEqual(status, 0)
        self.assertEqual(out.splitlines(), [
            'u1\t0\t0\t0\t4\t0.0',
            'u2\t0\t0\t1\t4\t0.25',
            '0.125',
        ])

    def test_missing_hypothesis_counts_as_deletions(self):
        ref, hyp = self.path('ref.jsonl'), self.path('hyp.jsonl')
        write_manifest([
            CorpusRecord('u1', 'en_native', 'a', 'a b', 'u1.wav', 1.0),
            CorpusRecord('u2', 'en_native', 'b', 'a b', 'u2.wav', 1.0),
        ], ref)
        write_manifest(read_manifest(ref)[:1], hyp)
        status, out, err = self.run_cli('per', '--ref', ref, '--hyp', hyp)
        self.assertEqual((status, out), (0, '0.5\n'))
        self.assertIn("'u2'", err)

    def test_split_json(self):
        out_dir, _ = self.build_corpus()
        manifest = os.path.join(out_dir, 'vietlish.jsonl')
        status, out, _ = self.run_cli('per', '--ref', manifest,
                                      '--hyp', manifest, '--split', '7:3',
                                      '--format', 'json')
        self.assertEqual(status, 0)
        payload = json.loads(out)
        self.assertEqual(list(payload), ['train', 'test'])
        self.assertEqual(payload['train']['utterances'] +
                         payload['test']['utterances'], 100)
        self.assertEqual(payload['test']['per'], 0.0)


class TestAedCommand(CliTestCase):
    def write_pcm(self, n_samples):
        path = self.path('audio.pcm')
        samples = rand.randint(-3000, 3000, size=n_samples).astype('<i2')
        samples.tofile(path)
        return path, samples

    def test_read_pcm(self):
        path, samples = self.write_pcm(10)
        np.testing.assert_array_equal(read_pcm(path), samples / 32768.0)

    def test_demo(self):
        path, _ = self.write_pcm(16000)
        status, out, _ = self.run_cli('aed', 'demo', '--audio', path,
                                      '--max-decode-len', '4',
                                      '--format', 'json')
        self.assertEqual(status, 0)
        payload = json.loads(out)
        self.assertEqual(payload['frames'], 98)
        self.assertLessEqual(len(payload['ids']), 3)
        self.assertEqual(len(payload['phonemes'].split()),
                         len(payload['ids']))

    def test_demo_is_seeded(self):
        path, _ = self.write_pcm(8000)
        argv = ('aed', 'demo', '--audio', path, '--seed', '3',
                '--max-decode-len', '4')
        self.assertEqual(self.run_cli(*argv), self.run_cli(*argv))

    def test_audio_too_short(self):
        path, _ = self.write_pcm(100)
        status, _, err = self.run_cli('aed', 'demo', '--audio', path)
        self.assertEqual(status, 1)
        self.assertTrue(err.startswith('E-SHAPE: '), err)

    @parameterized.expand([('gru',), ('lstm',)])
    def test_demo_recurrent_decoder(self, decoder):
        path, _ = self.write_pcm(8000)
        argv = ('aed', 'demo', '--audio', path, '--decoder', decoder,
                '--max-decode-len', '4', '--format', 'json')
        status, out, _ = self.run_cli(*argv)
        self.assertEqual(status, 0)
        self.assertLessEqual(len(json.loads(out)['ids']), 3)
        self.assertEqual(self.run_cli(*argv)[1], out)
