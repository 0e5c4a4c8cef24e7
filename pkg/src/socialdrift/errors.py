"""Exception hierarchy.

Everything raised for bad input derives from :class:`ValidationError` so the
CLI can map it to a single exit code. I/O failures are left as ``OSError``.
"""


class SocialDriftError(Exception):
    pass


class ValidationError(SocialDriftError, ValueError):
    pass


class ParseError(ValidationError):
    """Malformed input file; ``line`` and ``key`` locate the problem when known."""

    def __init__(self, message, line=None, key=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key {key!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.key = key


class _PairError(ValidationError):
    def __init__(self, pair, detail=""):
        self.pair = tuple(int(x) for x in pair)
        msg = f"{type(self).__name__}: {self.pair}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class SelfLoop(_PairError):
    pass


class DuplicateEdge(_PairError):
    pass


class NodeIdOutOfRange(_PairError):
    pass


class EdgeNotFound(_PairError):
    pass


class EdgeAlreadyPresent(_PairError):
    pass


class TooManyEdges(ValidationError):
    pass


class GraphFull(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class NonFiniteState(ValidationError):
    pass
