"""Chekanov-Eliashberg algebra of a plat front over F2."""

from .diagram import ResolvedDiagram, Vertex, resolve
from .model import Disk
from .oracle import brute_force_disk_oracle

__all__ = ["Disk", "ResolvedDiagram", "Vertex", "brute_force_disk_oracle", "resolve"]
