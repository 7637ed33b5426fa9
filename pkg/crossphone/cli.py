#
# Copyright 2024 crossphone developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""``crossphone`` command line.

Results go to stdout, one per line; errors go to stderr prefixed with their
code. Exit status is 0 on success, 1 on a validation error and 2 on a usage
error.
"""
from __future__ import division

import argparse
import contextlib
import json
import logging
import os
import sys
from collections import OrderedDict

import numpy as np

from . import __version__
from . import aed, corpus
from .errors import ConfigError, CrossphoneError, ManifestError
from .features import log_mel
from .g2p import load_lexicon, parse_ipa, word_to_phonemes
from .per import corpus_per
from .syllables import text_to_phonemes
from .tokens import (
    VIETNAMESE_CATEGORY_COUNT,
    load_default_inventory,
    load_inventory,
    serialize,
)
from .vietlish import localize, localize_to_phonemes, localized_text

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2

PLAIN = 'plain'
JSON = 'json'

DEFAULT_INVENTORY = 'default'

MANIFEST_NAME = '{}.jsonl'
REJECTS_NAME = 'rejects.tsv'
REJECTS = 'rejects'
TRAIN = 'train'
TEST = 'test'


def _emit(out, args, plain, payload):
    if args.format == JSON:
        out.write(json.dumps(payload, ensure_ascii=False) + '\n')
    else:
        out.write(plain + '\n')


def _cmd_parse(args, out):
    phonemes = serialize(text_to_phonemes(args.text))
    _emit(out, args, phonemes,
          OrderedDict([('text', args.text), ('phonemes', phonemes)]))


def _cmd_g2p(args, out):
    phonemes = serialize(word_to_phonemes(args.ipa))
    _emit(out, args, phonemes,
          OrderedDict([('ipa', args.ipa), ('phonemes', phonemes)]))


def _lexicon_ipa(word, lexicon_path):
    for entry in load_lexicon(lexicon_path):
        if entry.word == word:
            return entry.ipa
    raise ConfigError(
        "{!r} is not in the lexicon; pass --ipa".format(word))


def _cmd_vietlish(args, out):
    ipa = args.ipa or _lexicon_ipa(args.word, args.lexicon)
    syllables = parse_ipa(ipa)
    overrides = {} if args.rules_only else None
    text = localized_text(localize(args.word, syllables, overrides))
    phonemes = serialize(localize_to_phonemes(
        args.word, syllables, lexicon_override=overrides))
    _emit(out, args, '{}\t{}'.format(text, phonemes),
          OrderedDict([('word', args.word), ('ipa', ipa), ('text', text),
                       ('phonemes', phonemes)]))


def _parse_split(text):
    ratio = text.split('=', 1)[-1]
    try:
        train, test = (float(x) for x in ratio.split(':'))
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected a train:test ratio such as 7:3, got {!r}".format(text))
    if train < 0 or test < 0 or train + test <= 0:
        raise argparse.ArgumentTypeError("ratio parts must be non-negative")
    return test / (train + test)


def _score(references, hypotheses, ignore_separators):
    pairs = OrderedDict(
        (r.id, (r.phonemes, hypotheses[r.id].phonemes
                if r.id in hypotheses else ''))
        for r in references)
    return corpus_per(pairs, ignore_separators)


def _cmd_per(args, out):
    references = corpus.read_manifest(args.ref)
    hypotheses = OrderedDict((r.id, r) for r in corpus.read_manifest(args.hyp))
    known = set(r.id for r in references)
    for utt_id in hypotheses:
        if utt_id not in known:
            log.warning("hypothesis %r has no reference; ignored", utt_id)
    for r in references:
        if r.id not in hypotheses:
            log.warning("reference %r has no hypothesis; scored as empty",
                        r.id)

    if args.split is None:
        parts = OrderedDict([('all', references)])
    else:
        train, test = corpus.split_records(references, args.split, args.seed)
        parts = OrderedDict([('train', train), ('test', test)])

    results = OrderedDict()
    for name, records in parts.items():
        if not records:
            log.warning("%s split is empty", name)
            continue
        results[name] = _score(records, hypotheses, args.ignore_separators)

    if args.format == JSON:
        payload = OrderedDict()
        for name, (rate, breakdown) in results.items():
            payload[name] = OrderedDict([
                ('per', rate),
                ('utterances', len(breakdown)),
                ('ref_length', int(breakdown['ref_length'].sum())),
            ])
            if args.per_utterance:
                payload[name]['per_utterance'] = json.loads(
                    breakdown.reset_index().to_json(orient='records'))
        out.write(json.dumps(payload, ensure_ascii=False) + '\n')
        return

    for name, (rate, breakdown) in results.items():
        if args.per_utterance:
            for utt_id, row in breakdown.iterrows():
                out.write('{}\t{:d}\t{:d}\t{:d}\t{:d}\t{!r}\n'.format(
                    utt_id, int(row['insertions']), int(row['deletions']),
                    int(row['substitutions']), int(row['ref_length']),
                    float(row['per'])))
        if args.split is None:
            out.write('{!r}\n'.format(rate))
        else:
            out.write('{}\t{!r}\n'.format(name, rate))


def _cmd_corpus_build(args, out):
    lexicon = load_lexicon(args.lexicon, check_ipa=False)
    templates = corpus.load_templates(args.templates)
    vocab = load_default_inventory()
    rejects = []
    subsets = OrderedDict([
        (corpus.EN_NATIVE, corpus.build_en_native(lexicon, vocab,
                                                  rejects=rejects)),
        (corpus.VIETLISH, corpus.build_vietlish(lexicon, vocab,
                                                rejects=rejects)),
        (corpus.IEV, corpus.build_iev(lexicon, templates, vocab,
                                      seed=args.seed,
                                      per_template=args.per_template,
                                      rejects=rejects)),
    ])

    if not os.path.isdir(args.out_dir):
        os.makedirs(args.out_dir)
    summary = OrderedDict()

    def write(name, records):
        path = os.path.join(args.out_dir, MANIFEST_NAME.format(name))
        corpus.write_manifest(records, path)
        log.info("wrote %d records to %s", len(records), path)
        summary[name] = OrderedDict([('records', len(records)),
                                     ('path', path)])

    for subset, records in subsets.items():
        write(subset, records)
    if args.split is not None:
        for subset, records in subsets.items():
            train, test = corpus.split_records(records, args.split,
                                               seed=args.seed)
            write('{}.{}'.format(subset, TRAIN), train)
            write('{}.{}'.format(subset, TEST), test)

    rejects_path = os.path.join(args.out_dir, REJECTS_NAME)
    corpus.write_rejects(rejects, rejects_path)
    summary[REJECTS] = OrderedDict([('records', len(rejects)),
                                    ('path', rejects_path)])

    if args.format == JSON:
        out.write(json.dumps(summary, ensure_ascii=False) + '\n')
        return
    for name, info in summary.items():
        out.write('{}\t{}\t{}\n'.format(name, info['records'], info['path']))


def _cmd_corpus_stats(args, out):
    records = []
    for path in args.manifests:
        records.extend(corpus.read_manifest(path))
    table = corpus.stats(records)
    if args.format == JSON:
        out.write(table.reset_index().to_json(orient='records',
                                              force_ascii=False) + '\n')
        return
    for subset, row in table.iterrows():
        out.write('{}\t{}\t{:.6f}\n'.format(
            subset, int(row['samples']), row['hours']))


def _cmd_corpus_validate(args, out):
    problems = OrderedDict(
        (path, corpus.validate_manifest(path)) for path in args.manifests)
    if args.format == JSON:
        out.write(json.dumps(problems, ensure_ascii=False) + '\n')
    else:
        for path, issues in problems.items():
            if not issues:
                out.write('{}: OK\n'.format(path))
            for issue in issues:
                out.write('{}: {}\n'.format(path, issue))
    n_problems = sum(len(issues) for issues in problems.values())
    if n_problems:
        raise ManifestError(
            "{} problem(s) in {} manifest(s)".format(
                n_problems, len(problems)))


def read_pcm(path):
    """Raw 16-bit little endian mono PCM scaled to [-1, 1)."""
    return np.fromfile(path, dtype='<i2').astype(np.float64) / 32768.0


def _cmd_aed_demo(args, out):
    vocab = load_default_inventory()
    cfg = aed.ModelConfig.from_vocabulary(
        vocab, max_decode_len=args.max_decode_len, decoder=args.decoder)
    if args.weights:
        weights = aed.load_weights(args.weights, cfg)
    else:
        weights = aed.init_weights(cfg, args.seed)

    features = log_mel(read_pcm(args.audio), period=args.period)
    log.info("%d frames of log mel features", len(features))
    H = aed.encoder_forward(features, weights, cfg)
    ids = aed.greedy_decode(H, weights, cfg)
    text = ' '.join(vocab.entries[i].surface for i in ids)
    _emit(out, args, text,
          OrderedDict([('frames', len(features)), ('ids', ids),
                       ('phonemes', text)]))


def _cmd_inventory_check(args, out):
    if args.path == DEFAULT_INVENTORY:
        vocab = load_default_inventory()
    else:
        vocab = load_inventory(args.path)
    _emit(out, args,
          '{} Vietnamese categories: OK'.format(vocab.vietnamese_count),
          OrderedDict([('tokens', len(vocab)),
                       ('vietnamese_categories', vocab.vietnamese_count),
                       ('expected', VIETNAMESE_CATEGORY_COUNT),
                       ('kinds', vocab.kind_counts())]))


def _add_format(parser):
    parser.add_argument('--format', choices=[PLAIN, JSON], default=PLAIN,
                        help="output format (default: plain)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog='crossphone',
        description="Vietnamese-English phoneme toolkit.",
    )
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help="log progress (-vv for debug output)")
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    p = commands.add_parser('parse', help="Vietnamese text to phonemes")
    p.add_argument('text')
    _add_format(p)
    p.set_defaults(func=_cmd_parse)

    p = commands.add_parser('g2p', help="English IPA to phonemes")
    p.add_argument('ipa')
    _add_format(p)
    p.set_defaults(func=_cmd_g2p)

    p = commands.add_parser('vietlish',
                            help="localize an English word")
    p.add_argument('word')
    p.add_argument('--ipa', help="pronunciation; looked up in the lexicon "
                                 "when omitted")
    p.add_argument('--lexicon', default=None,
                   help="lexicon TSV (default: bundled)")
    p.add_argument('--rules-only', action='store_true',
                   help="ignore the override lexicon")
    _add_format(p)
    p.set_defaults(func=_cmd_vietlish)

    p = commands.add_parser('per', help="phoneme error rate of manifests")
    p.add_argument('--ref', required=True, help="reference manifest")
    p.add_argument('--hyp', required=True, help="hypothesis manifest")
    p.add_argument('--ignore-separators', action='store_true',
                   help="drop $ and | before scoring")
    p.add_argument('--per-utterance', action='store_true',
                   help="also print one line per utterance")
    p.add_argument('--split', type=_parse_split, default=None,
                   help="score train and test parts, e.g. 7:3")
    p.add_argument('--seed', type=int, default=0)
    _add_format(p)
    p.set_defaults(func=_cmd_per)

    p = commands.add_parser('corpus', help="synthetic corpus manifests")
    corpus_commands = p.add_subparsers(dest='corpus_command',
                                       metavar='action')
    corpus_commands.required = True

    c = corpus_commands.add_parser('build', help="build the three subsets")
    c.add_argument('--lexicon', default=None,
                   help="lexicon TSV (default: bundled)")
    c.add_argument('--templates', default=None,
                   help="carrier templates (default: bundled)")
    c.add_argument('--out-dir', required=True, help="output directory")
    c.add_argument('--seed', type=int, default=0)
    c.add_argument('--split', type=_parse_split, default=None,
                   help="also write train and test manifests, e.g. 7:3")
    c.add_argument('--per-template', type=int, default=2)
    _add_format(c)
    c.set_defaults(func=_cmd_corpus_build)

    c = corpus_commands.add_parser('stats', help="samples and hours")
    c.add_argument('manifests', nargs='+')
    _add_format(c)
    c.set_defaults(func=_cmd_corpus_stats)

    c = corpus_commands.add_parser('validate', help="check manifests")
    c.add_argument('manifests', nargs='+')
    _add_format(c)
    c.set_defaults(func=_cmd_corpus_validate)

    p = commands.add_parser('aed', help="toy encoder-decoder")
    aed_commands = p.add_subparsers(dest='aed_command', metavar='action')
    aed_commands.required = True
    a = aed_commands.add_parser('demo', help="decode raw 16 kHz PCM")
    a.add_argument('--audio', required=True,
                   help="16-bit little endian mono PCM at 16 kHz")
    a.add_argument('--seed', type=int, default=0)
    a.add_argument('--weights', default=None, help=".npz weight file")
    a.add_argument('--period', default='10ms', choices=['10ms', '20ms'],
                   help="frame shift (default: 10ms)")
    a.add_argument('--max-decode-len', type=int, default=32)
    a.add_argument('--decoder', default=aed.TRANSFORMER,
                   choices=aed.DECODERS,
                   help="decoder blocks (default: transformer)")
    _add_format(a)
    a.set_defaults(func=_cmd_aed_demo)

    p = commands.add_parser('inventory', help="phoneme inventory")
    inventory_commands = p.add_subparsers(dest='inventory_command',
                                          metavar='action')
    inventory_commands.required = True
    i = inventory_commands.add_parser('check', help="validate an inventory")
    i.add_argument('path', help="inventory TSV, or 'default'")
    _add_format(i)
    i.set_defaults(func=_cmd_inventory_check)

    return parser


def _configure_logging(verbosity, stream):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    handler = logging.StreamHandler(stream)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: '
                                           '%(message)s'))
    root = logging.getLogger('crossphone')
    root.handlers[:] = [handler]
    root.setLevel(level)
    root.propagate = False


def run(argv=None, stdout=None, stderr=None):
    """
    Run the command line.

    Parameters
    ----------
    argv : list of str, optional
        Arguments without the program name. Defaults to ``sys.argv[1:]``.
    stdout, stderr : file-like, optional

    Returns
    -------
    int
        Exit status.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), \
                contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    _configure_logging(args.verbose, stderr)
    try:
        args.func(args, stdout)
    except CrossphoneError as e:
        stderr.write('{}: {}\n'.format(e.code, e))
        return EXIT_INVALID
    except (IOError, OSError) as e:
        stderr.write('E-IO: {}\n'.format(e))
        return EXIT_INVALID
    return EXIT_OK


def main():
    sys.exit(run())
