"""Exact reflection-type decomposition data for compact semisimple Lie groups."""

from .rootsys import LieType, RootSystem, build_root_system
from .weyl import WeylGroup, generate_group

__all__ = ["LieType", "RootSystem", "build_root_system", "WeylGroup", "generate_group"]
