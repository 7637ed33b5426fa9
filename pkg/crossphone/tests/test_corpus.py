from __future__ import division

import io
import json
import os
import shutil
import tempfile
from unittest import TestCase

from parameterized import parameterized
from numpy.testing import assert_almost_equal
import pandas as pd

from crossphone.corpus import (
    EN_NATIVE,
    FIELDS,
    IEV,
    VIETLISH,
    CarrierTemplate,
    CorpusRecord,
    build_en_native,
    build_iev,
    build_vietlish,
    load_templates,
    read_manifest,
    split_records,
    stats,
    validate_manifest,
    write_manifest,
    write_rejects,
)
from crossphone.errors import (
    CorpusBuildError,
    ManifestError,
    TemplateError,
)
from crossphone.g2p import IpaLexiconEntry, load_lexicon
from crossphone.syllables import text_to_phonemes
from crossphone.tokens import serialize


class CorpusTestCase(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.lexicon = load_lexicon()
        cls.templates = load_templates()

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def path(self, name):
        return os.path.join(self.tmpdir, name)

    def write(self, text, name):
        path = self.path(name)
        with io.open(path, 'w', encoding='utf-8') as f:
            f.write(text)
        return path


class TestBuilders(CorpusTestCase):
    def test_en_native(self):
        records = build_en_native(self.lexicon)
        self.assertEqual(len(records), 100)
        by_id = {r.id: r for r in records}
        message = by_id['en_native-message']
        self.assertEqual(message.phonemes, 'm e -4 s | i dʒ')
        self.assertEqual(message.text, 'message')
        self.assertEqual(message.audio_ref,
                         'audio/en_native/en_native-message.wav')
        self.assertEqual(message.duration_s, 0.62)
        for r in records:
            self.assertNotIn('$', r.phonemes.split())

    def test_vietlish(self):
        records = build_vietlish(self.lexicon)
        self.assertEqual(len(records), 100)
        by_id = {r.id: r for r in records}
        self.assertEqual(by_id['vietlish-message'].phonemes,
                         'm e -4 tz $ s i -5 tz')
        self.assertEqual(by_id['vietlish-message'].text, 'mét xít')
        self.assertEqual(by_id['vietlish-inbox'].text, 'in bóc')
        for r in records:
            self.assertNotIn('|', r.phonemes.split())

    def test_duration_estimate(self):
        records = build_en_native(
            [IpaLexiconEntry('internet', 'ˈɪn.tə.net')])
        self.assertEqual(records[0].duration_s, 0.9)

    def test_sorted_by_id(self):
        records = build_vietlish(self.lexicon)
        ids = [r.id for r in records]
        self.assertEqual(ids, sorted(ids))

    def test_iev(self):
        records = build_iev(self.lexicon, self.templates, seed=7)
        self.assertEqual(len(records), 2 * len(self.templates))
        self.assertEqual(records[0].id, 'iev-000-00')
        for r in records:
            self.assertIn('$', r.phonemes.split())
            self.assertNotIn('_', r.text.split())
            self.assertEqual(r.phonemes, serialize(text_to_phonemes(r.text)))

    def test_iev_is_deterministic(self):
        first = build_iev(self.lexicon, self.templates, seed=3)
        second = build_iev(self.lexicon, self.templates, seed=3)
        self.assertEqual(first, second)

    def test_iev_seed_changes_fillers(self):
        first = build_iev(self.lexicon, self.templates, seed=1,
                          per_template=5)
        second = build_iev(self.lexicon, self.templates, seed=2,
                           per_template=5)
        self.assertNotEqual([r.text for r in first],
                            [r.text for r in second])

    def test_two_slot_template(self):
        template = CarrierTemplate('anh ấy nói về _ và _')
        self.assertEqual(template.n_slots, 2)
        self.assertEqual(template.fill(['in bóc', 'ô kê']),
                         'anh ấy nói về in bóc và ô kê')

    def test_rejects_are_reported(self):
        lexicon = list(self.lexicon) + [IpaLexiconEntry('bach', 'bɑːx')]
        rejects = []
        records = build_en_native(lexicon, rejects=rejects)
        self.assertEqual(len(records), 100)
        self.assertEqual([(s, w) for s, w, _ in rejects],
                         [(EN_NATIVE, 'bach')])

    def test_rejects_from_every_subset(self):
        lexicon = list(self.lexicon) + [IpaLexiconEntry('bach', 'bɑːx')]
        rejects = []
        build_en_native(lexicon, rejects=rejects)
        build_vietlish(lexicon, rejects=rejects)
        iev = build_iev(lexicon, self.templates, rejects=rejects)
        self.assertEqual(len(iev), 20)
        self.assertEqual([(s, w) for s, w, _ in rejects],
                         [(EN_NATIVE, 'bach'), (VIETLISH, 'bach'),
                          (IEV, 'bach')])

        path = self.path('rejects.tsv')
        write_rejects(rejects, path)
        report = pd.read_csv(path, sep='\t')
        self.assertEqual(list(report.columns), ['subset', 'word', 'message'])
        self.assertEqual(list(report['subset']), [EN_NATIVE, VIETLISH, IEV])
        self.assertEqual(list(report['message']), [m for _, _, m in rejects])

    def test_empty_rejects_report(self):
        path = self.path('rejects.tsv')
        write_rejects([], path)
        with io.open(path, encoding='utf-8') as f:
            self.assertEqual(f.read(), 'subset\tword\tmessage\n')

    def test_too_many_rejects(self):
        lexicon = [IpaLexiconEntry('bach', 'bɑːx'),
                   IpaLexiconEntry('bus', 'bʌs')]
        with self.assertRaises(CorpusBuildError):
            build_vietlish(lexicon, overrides={})


class TestTemplates(CorpusTestCase):
    def test_bundled(self):
        self.assertEqual(len(self.templates), 10)
        self.assertEqual(sum(t.n_slots for t in self.templates), 11)

    @parameterized.expand([
        ('no_slot', 'tôi cần cái này\n', 1),
        ('bad_word', 'anh có _ cho em\ntôi cần fox _\n', 2),
    ])
    def test_errors(self, name, text, lineno):
        with self.assertRaises(TemplateError) as ctx:
            load_templates(self.write(text, 'templates.txt'))
        self.assertIn(':{}:'.format(lineno), str(ctx.exception))


class TestManifest(CorpusTestCase):
    def build_all(self, seed=0):
        return (build_en_native(self.lexicon) +
                build_vietlish(self.lexicon) +
                build_iev(self.lexicon, self.templates, seed=seed))

    def test_write_read(self):
        records = self.build_all()
        path = self.path('manifest.jsonl')
        write_manifest(records, path)
        self.assertEqual(read_manifest(path), records)

    def test_field_order(self):
        path = self.path('manifest.jsonl')
        write_manifest(build_en_native(self.lexicon[:1]), path)
        with io.open(path, encoding='utf-8') as f:
            line = f.readline()
        self.assertEqual(list(json.loads(line)), list(FIELDS))
        self.assertIn('dʒ', line)

    def test_same_seed_same_bytes(self):
        first, second = self.path('a.jsonl'), self.path('b.jsonl')
        write_manifest(self.build_all(seed=5), first)
        write_manifest(self.build_all(seed=5), second)
        with io.open(first, 'rb') as f, io.open(second, 'rb') as g:
            self.assertEqual(f.read(), g.read())

    def test_built_manifests_validate(self):
        path = self.path('manifest.jsonl')
        write_manifest(self.build_all(), path)
        self.assertEqual(validate_manifest(path), [])

    @parameterized.expand([
        ('not_json', '{"id": \n', 1),
        ('missing_field', '{"id": "x"}\n', 1),
    ])
    def test_read_errors(self, name, text, lineno):
        with self.assertRaises(ManifestError) as ctx:
            read_manifest(self.write(text, 'bad.jsonl'))
        self.assertEqual(ctx.exception.lineno, lineno)

    @parameterized.expand([
        ('separator_in_en_native',
         CorpusRecord('x', EN_NATIVE, 'x', 'a $ b', 'x.wav', 1.0)),
        ('bar_in_vietlish',
         CorpusRecord('x', VIETLISH, 'x', 'a | b', 'x.wav', 1.0)),
        ('single_syllable_iev',
         CorpusRecord('x', IEV, 'x', 'a', 'x.wav', 1.0)),
        ('unknown_subset',
         CorpusRecord('x', 'other', 'x', 'a', 'x.wav', 1.0)),
        ('unknown_token',
         CorpusRecord('x', EN_NATIVE, 'x', 'a qq', 'x.wav', 1.0)),
        ('empty_phonemes',
         CorpusRecord('x', EN_NATIVE, 'x', '', 'x.wav', 1.0)),
        ('zero_duration',
         CorpusRecord('x', EN_NATIVE, 'x', 'a', 'x.wav', 0.0)),
    ])
    def test_validate_problems(self, name, record):
        path = self.path('bad.jsonl')
        write_manifest([record], path)
        problems = validate_manifest(path)
        self.assertEqual(len(problems), 1)
        self.assertTrue(problems[0].startswith('line 1:'))

    def test_duplicate_ids(self):
        record = CorpusRecord('x', EN_NATIVE, 'x', 'a', 'x.wav', 1.0)
        path = self.path('dup.jsonl')
        write_manifest([record, record], path)
        problems = validate_manifest(path)
        self.assertEqual(len(problems), 1)
        self.assertIn('duplicate', problems[0])


class TestStats(CorpusTestCase):
    def test_counts_match_builders(self):
        en = build_en_native(self.lexicon)
        vi = build_vietlish(self.lexicon)
        iev = build_iev(self.lexicon, self.templates, seed=0)
        path = self.path('manifest.jsonl')
        write_manifest(en + vi + iev, path)

        table = stats(path)
        self.assertEqual(list(table.index),
                         [EN_NATIVE, VIETLISH, IEV, 'total'])
        self.assertEqual(table.loc[EN_NATIVE, 'samples'], len(en))
        self.assertEqual(table.loc[VIETLISH, 'samples'], len(vi))
        self.assertEqual(table.loc[IEV, 'samples'], len(iev))
        self.assertEqual(table.loc['total', 'samples'],
                         len(en) + len(vi) + len(iev))
        assert_almost_equal(table.loc[IEV, 'hours'],
                            sum(r.duration_s for r in iev) / 3600)
        assert_almost_equal(table.loc['total', 'hours'],
                            table['hours'].iloc[:3].sum())

    def test_by_split(self):
        records = build_en_native(self.lexicon)
        train, test = split_records(records, 0.3, seed=0)
        table = stats(None, by_split={'train': train, 'test': test})
        self.assertEqual(table.loc[('train', 'total'), 'samples'], len(train))
        self.assertEqual(table.loc[('test', 'total'), 'samples'], len(test))


class TestSplit(CorpusTestCase):
    def test_partition(self):
        records = build_vietlish(self.lexicon)
        train, test = split_records(records, 0.3, seed=0)
        self.assertEqual(len(train) + len(test), len(records))
        self.assertFalse(set(r.id for r in train) & set(r.id for r in test))
        self.assertTrue(10 < len(test) < 50)

    def test_stable(self):
        records = build_vietlish(self.lexicon)
        _, test = split_records(records, 0.3, seed=4)
        _, shuffled = split_records(records[::-1], 0.3, seed=4)
        self.assertEqual(set(r.id for r in test), set(r.id for r in shuffled))

        _, subset = split_records(records[:50], 0.3, seed=4)
        self.assertEqual(set(r.id for r in subset),
                         set(r.id for r in test) & set(r.id for r in
                                                       records[:50]))

    @parameterized.expand([(0.0, 0), (1.0, 100)])
    def test_extremes(self, fraction, n_test):
        records = build_vietlish(self.lexicon)
        _, test = split_records(records, fraction, seed=0)
        self.assertEqual(len(test), n_test)
