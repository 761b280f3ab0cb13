"""Shared helpers: numeric primitives and text formatting/parsing."""
