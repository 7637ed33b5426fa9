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
"""Forward-only attention encoder-decoder over log mel features.

A small, untrained reference of the recognizer: a two-layer convolutional
front end and pre-norm Transformer encoder blocks. The default decoder
stacks blocks of causal self-attention and cross-attention to the encoder
output; the recurrent decoders put one cross-attention layer in front of
forward-only GRU or LSTM blocks. Everything runs in float64 numpy. Nothing
here trains.

Linear layers follow the ``(out_features, in_features)`` weight layout and
compute ``x @ W.T + b``.
"""
from __future__ import division

from collections import OrderedDict, namedtuple
from dataclasses import dataclass

import numpy as np
from scipy.special import erf, expit, softmax
from scipy.stats import norm

from .errors import (
    ConfigError,
    NumericError,
    ShapeError,
    StructureError,
    TokenError,
)
from .periods import N_MELS
from .utils import rolling_window

CONV_KERNEL = 3

# tolerance of the softmax row-sum check
ROW_SUM_TOLERANCE = 1e-9

# float64, little endian
WEIGHT_DTYPE = '<f8'

DEFAULT_FD_STEP = 1e-4

TRANSFORMER = 'transformer'
GRU = 'gru'
LSTM = 'lstm'
DECODERS = (TRANSFORMER, GRU, LSTM)

# stacked gate rows per recurrent cell: r z n, and i f g o
GATES = {GRU: 3, LSTM: 4}


@dataclass(frozen=True)
class ModelConfig:
    """
    Sizes of the toy encoder-decoder.

    Parameters
    ----------
    vocab_size : int
        Number of output tokens.
    sot_id, eot_id : int
        Ids of ``<sot>`` and ``<eot>``.
    d_model : int, optional
        Model width. Must be divisible by ``n_heads``.
    n_heads : int, optional
    n_encoder_blocks, n_decoder_blocks : int, optional
    ffn_dim : int, optional
        Hidden width of the feed-forward layers.
    max_decode_len : int, optional
        Longest decoder input, ``<sot>`` included.
    n_mels : int, optional
        Feature channels of the encoder input.
    eps : float, optional
        Layer normalization floor.
    decoder : str, optional
        ``'transformer'``, ``'gru'`` or ``'lstm'``.
    n_rnn_blocks : int, optional
        Recurrent blocks after the cross-attention layer of the GRU and
        LSTM decoders.
    """
    vocab_size: int
    sot_id: int
    eot_id: int
    d_model: int = 64
    n_heads: int = 4
    n_encoder_blocks: int = 2
    n_decoder_blocks: int = 2
    ffn_dim: int = 256
    max_decode_len: int = 32
    n_mels: int = N_MELS
    eps: float = 1e-5
    decoder: str = TRANSFORMER
    n_rnn_blocks: int = 3

    def __post_init__(self):
        if self.decoder not in DECODERS:
            raise ConfigError(
                "unknown decoder {!r}, expected one of {}".format(
                    self.decoder, ', '.join(DECODERS)))
        for name in ('vocab_size', 'd_model', 'n_heads', 'n_encoder_blocks',
                     'n_decoder_blocks', 'ffn_dim', 'n_mels',
                     'n_rnn_blocks'):
            if getattr(self, name) < 1:
                raise ConfigError("{} must be positive".format(name))
        if self.d_model % self.n_heads:
            raise ConfigError(
                "d_model {} is not divisible by n_heads {}".format(
                    self.d_model, self.n_heads))
        if self.max_decode_len < 2:
            raise ConfigError("max_decode_len must be at least 2")
        for name in ('sot_id', 'eot_id'):
            if not 0 <= getattr(self, name) < self.vocab_size:
                raise ConfigError("{} is outside the vocabulary".format(name))
        if self.sot_id == self.eot_id:
            raise ConfigError("sot_id and eot_id must differ")
        if not self.eps > 0:
            raise ConfigError("eps must be positive")

    @property
    def head_dim(self):
        return self.d_model // self.n_heads

    @classmethod
    def from_vocabulary(cls, vocab, **kwargs):
        return cls(len(vocab), vocab.sot_id, vocab.eot_id, **kwargs)


def _layer_norm_shapes(prefix, d):
    return [(prefix + '.weight', (d,)), (prefix + '.bias', (d,))]


def _linear_shapes(prefix, n_out, n_in):
    return [(prefix + '.weight', (n_out, n_in)), (prefix + '.bias', (n_out,))]


def _attention_shapes(prefix, d):
    shapes = []
    for name in ('query', 'key', 'value', 'out'):
        shapes += _linear_shapes('{}.{}'.format(prefix, name), d, d)
    return shapes


def _ffn_shapes(prefix, cfg):
    return (_linear_shapes(prefix + '.fc1', cfg.ffn_dim, cfg.d_model) +
            _linear_shapes(prefix + '.fc2', cfg.d_model, cfg.ffn_dim))


def _rnn_shapes(prefix, n_gates, d):
    return [(prefix + '.weight_ih', (n_gates * d, d)),
            (prefix + '.weight_hh', (n_gates * d, d)),
            (prefix + '.bias_ih', (n_gates * d,)),
            (prefix + '.bias_hh', (n_gates * d,))]


def expected_shapes(cfg):
    """
    Every parameter of the model and its shape.

    Returns
    -------
    OrderedDict
        Layer path -> shape tuple, in a fixed order.
    """
    d = cfg.d_model
    shapes = [
        ('encoder.conv1.weight', (d, cfg.n_mels, CONV_KERNEL)),
        ('encoder.conv1.bias', (d,)),
        ('encoder.conv2.weight', (d, d, CONV_KERNEL)),
        ('encoder.conv2.bias', (d,)),
    ]
    for i in range(cfg.n_encoder_blocks):
        block = 'encoder.blocks.{}'.format(i)
        shapes += _layer_norm_shapes(block + '.attn_ln', d)
        shapes += _attention_shapes(block + '.attn', d)
        shapes += _layer_norm_shapes(block + '.ffn_ln', d)
        shapes += _ffn_shapes(block + '.ffn', cfg)
    shapes += _layer_norm_shapes('encoder.ln_post', d)

    shapes.append(('decoder.embedding.weight', (cfg.vocab_size, d)))
    if cfg.decoder == TRANSFORMER:
        for i in range(cfg.n_decoder_blocks):
            block = 'decoder.blocks.{}'.format(i)
            shapes += _layer_norm_shapes(block + '.self_attn_ln', d)
            shapes += _attention_shapes(block + '.self_attn', d)
            shapes += _layer_norm_shapes(block + '.cross_attn_ln', d)
            shapes += _attention_shapes(block + '.cross_attn', d)
            shapes += _layer_norm_shapes(block + '.ffn_ln', d)
            shapes += _ffn_shapes(block + '.ffn', cfg)
    else:
        shapes += _layer_norm_shapes('decoder.cross_attn_ln', d)
        shapes += _attention_shapes('decoder.cross_attn', d)
        for i in range(cfg.n_rnn_blocks):
            shapes += _rnn_shapes('decoder.rnn.{}'.format(i),
                                  GATES[cfg.decoder], d)
    shapes += _layer_norm_shapes('decoder.ln_post', d)
    shapes += _linear_shapes('decoder.proj', cfg.vocab_size, d)
    return OrderedDict(shapes)


def init_weights(cfg, seed=0):
    """
    Random weights for ``cfg``.

    Matrices are drawn from N(0, 1 / fan_in), biases are zero and layer
    norm gains are one. The same seed gives the same weights.

    Returns
    -------
    OrderedDict
        Layer path -> np.ndarray.
    """
    rand = np.random.RandomState(seed)
    weights = OrderedDict()
    for path, shape in expected_shapes(cfg).items():
        if path.endswith('_ln.weight') or path.endswith('ln_post.weight'):
            value = np.ones(shape)
        elif path.rsplit('.', 1)[-1].startswith('bias'):
            value = np.zeros(shape)
        else:
            fan_in = int(np.prod(shape[1:]))
            value = rand.normal(0.0, 1.0 / np.sqrt(fan_in), size=shape)
        weights[path] = value
    return weights


def check_weights(weights, cfg):
    """Raise ShapeError naming the first missing or misshapen parameter."""
    for path, shape in expected_shapes(cfg).items():
        if path not in weights:
            raise ShapeError(path, "missing")
        if tuple(weights[path].shape) != shape:
            raise ShapeError(
                path, "expected shape {}, found {}".format(
                    shape, tuple(weights[path].shape)))


def save_weights(weights, path):
    """Store weights as an ``.npz`` archive of little endian float64."""
    np.savez(path, **OrderedDict(
        (k, np.ascontiguousarray(v, dtype=WEIGHT_DTYPE))
        for k, v in weights.items()
    ))


def load_weights(path, cfg=None):
    """
    Read weights written by :func:`save_weights`.

    Parameters
    ----------
    path : str
    cfg : ModelConfig, optional
        When given the weights are checked against it.
    """
    with np.load(path) as archive:
        weights = OrderedDict(
            (k, archive[k].astype(np.float64)) for k in archive.files)
    if cfg is not None:
        check_weights(weights, cfg)
        weights = OrderedDict(
            (k, weights[k]) for k in expected_shapes(cfg))
    return weights


def _params(weights, prefix):
    try:
        return weights[prefix + '.weight'], weights[prefix + '.bias']
    except KeyError as e:
        raise ShapeError(prefix, "missing parameter {}".format(e))


def positional_encoding(n, d):
    """
    Sinusoidal position table of shape ``(n, d)``.

    Even columns hold ``sin(pos / 10000 ** (2i / d))`` and odd columns the
    matching cosine.
    """
    if n < 1 or d < 1:
        raise ConfigError("positional encoding needs n, d >= 1")
    position = np.arange(n, dtype=np.float64)[:, np.newaxis]
    rates = np.exp(-np.log(10000.0) * np.arange(0, d, 2) / d)
    table = np.zeros((n, d))
    table[:, 0::2] = np.sin(position * rates)
    table[:, 1::2] = np.cos(position * rates[:d // 2])
    return table


def gelu(x):
    """Exact GELU, ``x * Phi(x)``."""
    x = np.asarray(x, dtype=np.float64)
    return 0.5 * x * (1.0 + erf(x / np.sqrt(2.0)))


def gelu_grad(x):
    x = np.asarray(x, dtype=np.float64)
    return norm.cdf(x) + x * norm.pdf(x)


def layer_norm(x, weight, bias, eps=1e-5):
    mean = x.mean(axis=-1, keepdims=True)
    var = x.var(axis=-1, keepdims=True)
    return (x - mean) / np.sqrt(var + eps) * weight + bias


def linear(x, weight, bias, layer='linear'):
    if x.shape[-1] != weight.shape[1]:
        raise ShapeError(
            layer, "input has {} features, weight expects {}".format(
                x.shape[-1], weight.shape[1]))
    return x.dot(weight.T) + bias


def conv1d(x, weight, bias, stride=1, layer='conv'):
    """
    Same-padded 1-D convolution over time.

    Parameters
    ----------
    x : np.ndarray
        ``(T, C_in)``.
    weight : np.ndarray
        ``(C_out, C_in, kernel)``, kernel odd.
    bias : np.ndarray
        ``(C_out,)``.
    stride : int, optional

    Returns
    -------
    np.ndarray
        ``(ceil(T / stride), C_out)``.
    """
    if x.ndim != 2 or x.shape[0] < 1:
        raise ShapeError(
            layer, "expected a (T, C) input, found {}".format(x.shape))
    if x.shape[1] != weight.shape[1]:
        raise ShapeError(
            layer, "input has {} channels, weight expects {}".format(
                x.shape[1], weight.shape[1]))
    kernel = weight.shape[2]
    pad = kernel // 2
    padded = np.pad(x, ((pad, pad), (0, 0)), mode='constant')
    # (T, C_in, kernel)
    windows = rolling_window(padded, kernel).transpose(0, 2, 1)
    out = np.einsum('tck,ock->to', windows, weight) + bias
    return out[::stride]


def _check_rows(weights, layer):
    if not np.all(np.isfinite(weights)):
        raise NumericError("{}: attention weights are not finite".format(
            layer))
    worst = np.max(np.abs(weights.sum(axis=-1) - 1.0))
    if worst > ROW_SUM_TOLERANCE:
        raise NumericError(
            "{}: attention rows sum to 1 +/- {:.3g}".format(layer, worst))


def attention(Q, K, V, mask=None, layer='attention'):
    """
    Scaled dot-product attention, ``softmax(Q K^T / sqrt(d_k)) V``.

    Parameters
    ----------
    Q : np.ndarray
        ``(n_queries, d_k)``.
    K : np.ndarray
        ``(n_keys, d_k)``.
    V : np.ndarray
        ``(n_keys, d_v)``.
    mask : np.ndarray, optional
        Boolean ``(n_queries, n_keys)``, True where a query may attend.
        Every row needs at least one True.

    Returns
    -------
    np.ndarray
        ``(n_queries, d_v)``.
    """
    Q, K, V = (np.asarray(a, dtype=np.float64) for a in (Q, K, V))
    if Q.ndim != 2 or K.ndim != 2 or V.ndim != 2:
        raise ShapeError(layer, "Q, K and V must be matrices")
    if Q.shape[1] != K.shape[1]:
        raise ShapeError(
            layer, "queries have {} columns, keys {}".format(
                Q.shape[1], K.shape[1]))
    if K.shape[0] != V.shape[0]:
        raise ShapeError(
            layer, "{} keys but {} values".format(K.shape[0], V.shape[0]))

    logits = Q.dot(K.T) / np.sqrt(Q.shape[1])
    if mask is not None:
        logits = np.where(mask, logits, -np.inf)
    weights = softmax(logits, axis=-1)
    _check_rows(weights, layer)
    return weights.dot(V)


def causal_mask(n):
    return np.tril(np.ones((n, n), dtype=bool))


def multi_head_attention(x, source, weights, prefix, cfg, mask=None):
    """
    Multi-head attention of ``x`` over ``source``.

    Self-attention passes the same array twice. Parameters are read from
    ``<prefix>.query``, ``.key``, ``.value`` and ``.out``.
    """
    q = linear(x, *_params(weights, prefix + '.query'),
               layer=prefix + '.query')
    k = linear(source, *_params(weights, prefix + '.key'),
               layer=prefix + '.key')
    v = linear(source, *_params(weights, prefix + '.value'),
               layer=prefix + '.value')

    dh = cfg.head_dim
    heads = [
        attention(q[:, h * dh:(h + 1) * dh], k[:, h * dh:(h + 1) * dh],
                  v[:, h * dh:(h + 1) * dh], mask, layer=prefix)
        for h in range(cfg.n_heads)
    ]
    return linear(np.concatenate(heads, axis=1),
                  *_params(weights, prefix + '.out'), layer=prefix + '.out')


def ffn(x, weights, prefix):
    hidden = gelu(linear(x, *_params(weights, prefix + '.fc1'),
                         layer=prefix + '.fc1'))
    return linear(hidden, *_params(weights, prefix + '.fc2'),
                  layer=prefix + '.fc2')


def _norm(x, weights, prefix, cfg):
    return layer_norm(x, *_params(weights, prefix), eps=cfg.eps)


def encoder_forward(x, weights, cfg):
    """
    Encode a feature matrix.

    Parameters
    ----------
    x : np.ndarray
        ``(T, n_mels)`` features, e.g. from
        :func:`crossphone.features.log_mel`.
    weights : dict
        Layer path -> array.
    cfg : ModelConfig

    Returns
    -------
    np.ndarray
        ``H`` of shape ``(ceil(T / 2), d_model)``.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != cfg.n_mels:
        raise ShapeError(
            'encoder.conv1', "expected (T, {}) features, found {}".format(
                cfg.n_mels, x.shape))

    h = gelu(conv1d(x, *_params(weights, 'encoder.conv1'),
                    layer='encoder.conv1'))
    h = gelu(conv1d(h, *_params(weights, 'encoder.conv2'), stride=2,
                    layer='encoder.conv2'))
    h = h + positional_encoding(len(h), cfg.d_model)

    for i in range(cfg.n_encoder_blocks):
        block = 'encoder.blocks.{}'.format(i)
        a = _norm(h, weights, block + '.attn_ln', cfg)
        h = h + multi_head_attention(a, a, weights, block + '.attn', cfg)
        h = h + ffn(_norm(h, weights, block + '.ffn_ln', cfg), weights,
                    block + '.ffn')

    return _norm(h, weights, 'encoder.ln_post', cfg)


def _check_prefix(prefix, cfg):
    ids = list(prefix)
    if not ids:
        raise StructureError("decoder prefix is empty")
    for position, i in enumerate(ids):
        if isinstance(i, (bool, np.bool_)) or \
           not isinstance(i, (int, np.integer)) or \
           not 0 <= i < cfg.vocab_size:
            raise TokenError(
                "prefix position {}: id {!r} is outside the vocabulary of "
                "{}".format(position, i, cfg.vocab_size))
    if ids[0] != cfg.sot_id:
        raise StructureError("decoder prefix must start with <sot>")
    if len(ids) > cfg.max_decode_len:
        raise StructureError(
            "prefix of {} tokens is longer than max_decode_len {}".format(
                len(ids), cfg.max_decode_len))
    return np.asarray(ids, dtype=np.int64)


def recurrent(x, weights, prefix, cell):
    """
    One forward-only GRU or LSTM layer over the rows of ``x``.

    Parameters
    ----------
    x : np.ndarray
        ``(T, d_model)``.
    weights : dict
        Reads ``<prefix>.weight_ih``, ``.weight_hh``, ``.bias_ih`` and
        ``.bias_hh``, gate rows stacked as ``r z n`` (GRU) or ``i f g o``
        (LSTM).
    prefix : str
    cell : str
        ``'gru'`` or ``'lstm'``.

    Returns
    -------
    np.ndarray
        ``(T, d_model)`` hidden states. The state starts at zero, so row
        ``t`` depends on rows ``0..t`` of ``x`` only.
    """
    try:
        w_ih = weights[prefix + '.weight_ih']
        w_hh = weights[prefix + '.weight_hh']
        b_ih = weights[prefix + '.bias_ih']
        b_hh = weights[prefix + '.bias_hh']
    except KeyError as e:
        raise ShapeError(prefix, "missing parameter {}".format(e))

    d = w_hh.shape[1]
    gates_x = linear(x, w_ih, b_ih, layer=prefix)
    h = np.zeros(d)
    c = np.zeros(d)
    out = np.empty((len(x), d))
    for t, gx in enumerate(gates_x):
        gh = w_hh.dot(h) + b_hh
        if cell == GRU:
            r = expit(gx[:d] + gh[:d])
            z = expit(gx[d:2 * d] + gh[d:2 * d])
            n = np.tanh(gx[2 * d:] + r * gh[2 * d:])
            h = (1.0 - z) * n + z * h
        else:
            g = gx + gh
            c = expit(g[d:2 * d]) * c + expit(g[:d]) * np.tanh(g[2 * d:3 * d])
            h = expit(g[3 * d:]) * np.tanh(c)
        out[t] = h
    return out


def _transformer_decoder(x, H, weights, cfg):
    x = x + positional_encoding(len(x), cfg.d_model)
    mask = causal_mask(len(x))
    for i in range(cfg.n_decoder_blocks):
        block = 'decoder.blocks.{}'.format(i)
        a = _norm(x, weights, block + '.self_attn_ln', cfg)
        x = x + multi_head_attention(a, a, weights, block + '.self_attn', cfg,
                                     mask=mask)
        a = _norm(x, weights, block + '.cross_attn_ln', cfg)
        x = x + multi_head_attention(a, H, weights, block + '.cross_attn',
                                     cfg)
        x = x + ffn(_norm(x, weights, block + '.ffn_ln', cfg), weights,
                    block + '.ffn')
    return x


def _recurrent_decoder(x, H, weights, cfg):
    # each query attends from its own token only; order comes from the cells
    a = _norm(x, weights, 'decoder.cross_attn_ln', cfg)
    x = x + multi_head_attention(a, H, weights, 'decoder.cross_attn', cfg)
    for i in range(cfg.n_rnn_blocks):
        x = recurrent(x, weights, 'decoder.rnn.{}'.format(i), cfg.decoder)
    return x


def decoder_forward(H, prefix, weights, cfg):
    """
    Logits for every position of a decoder prefix.

    Parameters
    ----------
    H : np.ndarray
        Encoder output, ``(T', d_model)``.
    prefix : sequence of int
        Token ids starting with ``<sot>``.
    weights : dict
    cfg : ModelConfig
        ``cfg.decoder`` picks the Transformer blocks or the cross-attention
        layer followed by ``cfg.n_rnn_blocks`` GRU or LSTM blocks.

    Returns
    -------
    np.ndarray
        ``(len(prefix), vocab_size)``. Row ``j`` depends on ``prefix[:j + 1]``
        only.
    """
    ids = _check_prefix(prefix, cfg)
    H = np.asarray(H, dtype=np.float64)
    if H.ndim != 2 or H.shape[1] != cfg.d_model or not len(H):
        layer = 'decoder.blocks.0.cross_attn' \
            if cfg.decoder == TRANSFORMER else 'decoder.cross_attn'
        raise ShapeError(
            layer, "expected (T', {}) encoder output, found {}".format(
                cfg.d_model, H.shape))

    if 'decoder.embedding.weight' not in weights:
        raise ShapeError('decoder.embedding', "missing parameter")
    x = weights['decoder.embedding.weight'][ids]
    if cfg.decoder == TRANSFORMER:
        x = _transformer_decoder(x, H, weights, cfg)
    else:
        x = _recurrent_decoder(x, H, weights, cfg)

    x = _norm(x, weights, 'decoder.ln_post', cfg)
    return linear(x, *_params(weights, 'decoder.proj'), layer='decoder.proj')


def decoder_step(H, prefix, weights, cfg):
    """Next-token logits after ``prefix``."""
    return decoder_forward(H, prefix, weights, cfg)[-1]


def greedy_decode(H, weights, cfg):
    """
    Greedy decoding from ``<sot>``.

    The highest logit wins, the lowest id on ties. Decoding stops at
    ``<eot>`` or when the prefix reaches ``max_decode_len``.

    Returns
    -------
    list of int
        Decoded ids without ``<sot>`` and ``<eot>``.
    """
    prefix = [cfg.sot_id]
    while len(prefix) < cfg.max_decode_len:
        next_id = int(np.argmax(decoder_step(H, prefix, weights, cfg)))
        if next_id == cfg.eot_id:
            break
        prefix.append(next_id)
    controls = (cfg.sot_id, cfg.eot_id)
    return [i for i in prefix[1:] if i not in controls]


# Directional derivatives for the numeric checks below.

Differentiable = namedtuple('Differentiable', 'name fn jvp')


def _softmax_jvp(x, v):
    s = softmax(x, axis=-1)
    return s * (v - (s * v).sum(axis=-1, keepdims=True))


GELU = Differentiable('gelu', gelu, lambda x, v: gelu_grad(x) * v)
SOFTMAX = Differentiable(
    'softmax', lambda x: softmax(x, axis=-1), _softmax_jvp)


def linear_op(weight, bias):
    return Differentiable(
        'linear',
        lambda x: linear(x, weight, bias),
        lambda x, v: v.dot(weight.T),
    )


def ffn_op(weights, prefix):
    """The feed-forward layer at ``prefix`` as a function of its input."""
    w1, b1 = _params(weights, prefix + '.fc1')
    w2, _ = _params(weights, prefix + '.fc2')

    def jvp(x, v):
        return (gelu_grad(linear(x, w1, b1)) * v.dot(w1.T)).dot(w2.T)

    return Differentiable('ffn', lambda x: ffn(x, weights, prefix), jvp)


def attention_op(K, V):
    """Attention as a function of the queries, keys and values fixed."""
    K = np.asarray(K, dtype=np.float64)
    V = np.asarray(V, dtype=np.float64)
    scale = np.sqrt(K.shape[1])

    def jvp(Q, dQ):
        return _softmax_jvp(Q.dot(K.T) / scale, dQ.dot(K.T) / scale).dot(V)

    return Differentiable('attention', lambda Q: attention(Q, K, V), jvp)


def finite_diff_check(op, point, direction, step=DEFAULT_FD_STEP):
    """
    Compare an analytic directional derivative with central differences.

    Parameters
    ----------
    op : Differentiable
        ``fn`` and its Jacobian-vector product ``jvp``.
    point : array-like
        Where to differentiate.
    direction : array-like
        Same shape as ``point``.
    step : float, optional

    Returns
    -------
    float
        ``max |numeric - analytic| / max |analytic|``.
    """
    x = np.asarray(point, dtype=np.float64)
    v = np.asarray(direction, dtype=np.float64)
    if x.shape != v.shape:
        raise ShapeError(
            op.name, "point {} and direction {} differ in shape".format(
                x.shape, v.shape))

    numeric = (op.fn(x + step * v) - op.fn(x - step * v)) / (2 * step)
    analytic = op.jvp(x, v)
    scale = max(np.max(np.abs(analytic)), np.finfo(np.float64).tiny)
    return float(np.max(np.abs(numeric - analytic)) / scale)
