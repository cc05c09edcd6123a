"""Python interface to the size-Ramsey cycle construction.

Profiles, records and certificates are plain dicts with the same layout as
the CLI's JSON files.
"""

import json

from . import _core
from ._core import Error, gadget_is_ramsey, lift_split, lift_window

__all__ = ["Error", "run", "verify", "gadget", "gadget_is_ramsey", "lift_split", "lift_window"]


def run(profile):
    """Run the pipeline. Returns exit_code, record, timestamps and, when
    reached, certificate, gamma and coloring."""
    return json.loads(_core.run(json.dumps(profile)))


def verify(certificate, gamma, coloring):
    """Recheck a certificate against a host graph and colouring."""
    return json.loads(_core.verify(json.dumps(certificate), json.dumps(gamma), json.dumps(coloring)))


def gadget(descriptor, seed=1):
    """Gadget graph for a descriptor such as "incidence:q=2"."""
    return json.loads(_core.gadget(descriptor, seed))
