"""Socle: a collaborative argumentation platform built on a statement graph.

Statements carry a normal and a negated textual form. Support/oppose
edges are stored canonically against the parent's normal form, so the
negated view of any statement is derived by swapping its supporting and
opposing lists. Edges onto plain statements are reified as discussable
relation-statements ("A supports B").
"""

from socle.model import Form, Kind, Polarity, Status

__all__ = ["Form", "Kind", "Polarity", "Status"]

__version__ = "0.1.0"
