"""Exception hierarchy shared by every fdgames module."""

from __future__ import annotations


class FDGameError(Exception):
    """Base class for all domain errors raised by fdgames."""


class DuplicateName(FDGameError, ValueError):
    def __init__(self, name: str):
        super().__init__(f"duplicate name {name!r}")
        self.name = name


class EmptyUniverse(FDGameError, ValueError):
    def __init__(self, what: str = "universe"):
        super().__init__(f"{what} must be nonempty")


class UnknownNode(FDGameError, KeyError):
    def __init__(self, node):
        super().__init__(f"unknown node {node!r}")
        self.node = node

    def __str__(self) -> str:
        return self.args[0]


class PartitionMismatch(FDGameError, ValueError):
    pass


class CapacityExceeded(FDGameError, ValueError):
    def __init__(self, size: int, limit: int):
        super().__init__(f"universe of {size} nodes exceeds the limit of {limit}")
        self.size = size
        self.limit = limit


class UnknownAgent(FDGameError, KeyError):
    def __init__(self, agent):
        super().__init__(f"unknown agent {agent!r}")
        self.agent = agent

    def __str__(self) -> str:
        return self.args[0]


class UnknownSituation(FDGameError, KeyError):
    def __init__(self, name, line: int | None = None, col: int | None = None):
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"unknown situation {name!r}{where}")
        self.name = name
        self.line = line
        self.col = col

    def __str__(self) -> str:
        return self.args[0]


class MalformedGame(FDGameError, ValueError):
    pass


class EmptySubset(FDGameError, ValueError):
    def __init__(self):
        super().__init__("subset must be nonempty")


class ShapeMismatch(FDGameError, ValueError):
    pass


class ParseError(FDGameError, ValueError):
    """Syntax error in a ``.fdg`` or ``.nfg`` document (1-based line/column)."""

    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col
        self.message = message


class ArcBeforeAgent(ParseError):
    def __init__(self, line: int, col: int):
        super().__init__(line, col, "arc declared before any 'agent' line")


class DuplicateSituationsLine(ParseError):
    def __init__(self, line: int, col: int):
        super().__init__(line, col, "'situations' may only be declared once")


class MissingProfile(FDGameError, ValueError):
    def __init__(self, profile: tuple[str, ...]):
        super().__init__(f"no payoff given for profile {','.join(profile)}")
        self.profile = profile


class ArityMismatch(ParseError):
    pass
