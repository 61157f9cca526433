"""Sector calculus and point counting for stacky Batyrev-Manin/Malle families.

Thin wrapper around the C++ core; see ``help(stacky._core)`` for the full
surface.
"""

try:
    from . import _stacky as _core  # installed layout: stacky/_stacky.so
except ImportError:
    import _stacky as _core  # build-tree layout: _stacky.so on PYTHONPATH

Perm = _core.Perm
PermGroup = _core.PermGroup
StackDescriptor = _core.StackDescriptor
StackyError = _core.StackyError
ab_invariants = _core.ab_invariants
fit_exponents = _core.fit_exponents
invariants = _core.invariants
is_adequate = _core.is_adequate
junior_count = _core.junior_count
kluners_report = _core.kluners_report
mu_count = _core.mu_count
mu_height = _core.mu_height
mu_residue = _core.mu_residue
mu_sieve_oracle = _core.mu_sieve_oracle
parse_stack = _core.parse_stack
sector_table = _core.sector_table
sectors = _core.sectors
thin_scan = _core.thin_scan
wps_count = _core.wps_count
wps_height = _core.wps_height
wps_oracle_counts = _core.wps_oracle_counts
wps_residue = _core.wps_residue

__all__ = [
    "Perm",
    "PermGroup",
    "StackDescriptor",
    "StackyError",
    "ab_invariants",
    "fit_exponents",
    "invariants",
    "is_adequate",
    "junior_count",
    "kluners_report",
    "mu_count",
    "mu_height",
    "mu_residue",
    "mu_sieve_oracle",
    "parse_stack",
    "sector_table",
    "sectors",
    "thin_scan",
    "wps_count",
    "wps_height",
    "wps_oracle_counts",
    "wps_residue",
]
