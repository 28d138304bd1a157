"""Finite hyperalgebra workbench."""

import json

from ._core import (
    CapExceeded,
    Hypermagma,
    InputError,
    Report,
    Undetermined,
    builtin_hypermagma,
    builtin_hypermagma_names,
    canonical_form,
    census,
    check_hyperfield,
    check_hypergroup,
    check_hypersemigroup,
    emit_toml,
    nr_counterexample,
    quotient,
    tensor_summary,
)
from ._core import fingerprint as _fingerprint
from ._core import parse_toml as _parse_toml


def parse_toml(text):
    return json.loads(_parse_toml(text))


def to_toml(doc):
    return emit_toml(json.dumps(doc))


def fingerprint(doc):
    return _fingerprint(json.dumps(doc))


def table(h):
    """Hyperaddition as a dict of label pairs to label sets."""
    labels = h.carrier
    return {(labels[a], labels[b]): {labels[x] for x in h.add(a, b)}
            for a in range(len(h)) for b in range(len(h))}
