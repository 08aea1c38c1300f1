from .grid_parser import GridKind, parse_grid, parse_interval

__all__ = ["GridKind", "parse_grid", "parse_interval"]
