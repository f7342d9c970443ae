from dataclasses import dataclass


@dataclass
class Args:
    debug: bool
    verbose: bool
    search_limit: int
    dim: int | None = None
    count: int | None = None
    eigenvalues: str | None = None
    tight: bool = False
    ordering: str = 'blockwise'
    format: str = 'exact-json'
    output: str | None = None
    matrix: str | None = None
    exact: bool = False
