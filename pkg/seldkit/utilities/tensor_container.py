"""Reader/writer for the STF1 binary tensor container.

Layout (all integers unsigned 32-bit little-endian)::

    magic        4 bytes, b"STF1"
    count        number of tensors
    per tensor:
      name_len   byte length of the UTF-8 name
      name       UTF-8 bytes
      rank       number of dimensions
      dims       `rank` integers
      data       prod(dims) little-endian float32 values, row-major

Feature files hold one rank-3 tensor named "features"; weight files hold
one tensor per model parameter.
"""
import struct
from collections import OrderedDict

import numpy as np

from ..Errors import TensorContainerError

MAGIC = b'STF1'
FEATURES_TENSOR = 'features'
_U32 = struct.Struct('<I')
_DTYPE = np.dtype('<f4')


def encode_tensor(name, tensor):
    """Serialize one named tensor (without the container header)."""
    encoded_name = name.encode('utf-8')
    array = np.ascontiguousarray(tensor, dtype=_DTYPE)
    buff = [_U32.pack(len(encoded_name)), encoded_name,
            _U32.pack(array.ndim)]
    buff.extend(_U32.pack(dim) for dim in array.shape)
    buff.append(array.tobytes(order='C'))
    return b''.join(buff)


def dumps(tensors):
    names = list(tensors.keys())
    if len(set(names)) != len(names):
        raise TensorContainerError("tensor names must be unique")
    parts = [MAGIC, _U32.pack(len(names))]
    parts.extend(encode_tensor(name, tensors[name]) for name in names)
    return b''.join(parts)


def write_tensors(path, tensors):
    """Write an ordered mapping of name -> array to `path`."""
    payload = dumps(tensors)
    with open(path, 'wb') as f:
        f.write(payload)


class _Reader(object):

    def __init__(self, payload):
        self.payload = payload
        self.offset = 0

    def take(self, size, what):
        end = self.offset + size
        if end > len(self.payload):
            raise TensorContainerError(
                "truncated container while reading %s (need %d bytes at "
                "offset %d, file has %d)"
                % (what, size, self.offset, len(self.payload)))
        chunk = self.payload[self.offset:end]
        self.offset = end
        return chunk

    def u32(self, what):
        return _U32.unpack(self.take(4, what))[0]


def loads(payload):
    reader = _Reader(payload)
    if reader.take(4, 'magic') != MAGIC:
        raise TensorContainerError("bad magic, not an STF1 container")
    count = reader.u32('tensor count')
    tensors = OrderedDict()
    for index in range(count):
        name_len = reader.u32('name length of tensor %d' % index)
        try:
            name = reader.take(name_len, 'tensor name').decode('utf-8')
        except UnicodeDecodeError as e:
            raise TensorContainerError(
                "tensor %d has an invalid UTF-8 name" % index) from e
        if name in tensors:
            raise TensorContainerError("duplicate tensor name %r" % name)
        rank = reader.u32('rank of %r' % name)
        dims = tuple(reader.u32('dims of %r' % name) for _ in range(rank))
        size = int(np.prod(dims, dtype=np.int64)) * _DTYPE.itemsize
        data = reader.take(size, 'data of %r' % name)
        tensors[name] = np.frombuffer(data, dtype=_DTYPE).reshape(dims)
    if reader.offset != len(payload):
        raise TensorContainerError(
            "%d trailing bytes after the last tensor"
            % (len(payload) - reader.offset))
    return tensors


def read_tensors(path):
    """Read a container into an ordered mapping of name -> float32 array."""
    with open(path, 'rb') as f:
        return loads(f.read())


def write_features(path, features):
    features = np.asarray(features)
    if features.ndim != 3:
        raise TensorContainerError(
            "feature tensor must be rank 3, found rank %d" % features.ndim)
    write_tensors(path, OrderedDict([(FEATURES_TENSOR, features)]))


def read_features(path):
    tensors = read_tensors(path)
    if FEATURES_TENSOR not in tensors:
        raise TensorContainerError(
            "%s holds no %r tensor" % (path, FEATURES_TENSOR))
    features = tensors[FEATURES_TENSOR]
    if features.ndim != 3:
        raise TensorContainerError(
            "feature tensor must be rank 3, found rank %d" % features.ndim)
    return features.astype(float)
