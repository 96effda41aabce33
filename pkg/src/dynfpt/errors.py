"""Exception types shared across the package."""


class DynFptError(Exception):
    pass


class DuplicateEdge(DynFptError):
    pass


class LoopForbidden(DynFptError):
    pass


class VertexOutOfRange(DynFptError):
    pass


class UnknownHandle(DynFptError):
    pass


class NoSuchEdge(DynFptError):
    pass


class WouldCreateCycle(DynFptError):
    pass


class NoSuchTreeEdge(DynFptError):
    pass


class NotConnected(DynFptError):
    pass


class SameNode(DynFptError):
    pass


class UnknownComponent(DynFptError):
    pass


class NoSuchSet(DynFptError):
    pass


class DuplicateSet(DynFptError):
    pass


class SetTooLarge(DynFptError):
    pass


class EmptySet(DynFptError):
    pass


class DuplicatePoint(DynFptError):
    pass


class NoSuchPoint(DynFptError):
    pass


class PromiseViolated(DynFptError):
    pass


class DegreeBoundViolated(DynFptError):
    pass


class InstanceTooLarge(DynFptError):
    pass


class ParameterError(DynFptError):
    pass


class ParseError(DynFptError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


class OracleMismatch(DynFptError):
    def __init__(self, step: int, got, want):
        super().__init__(f"step {step}: got {got!r}, oracle says {want!r}")
        self.step = step
        self.got = got
        self.want = want


class UnsatisfiableParameters(DynFptError):
    pass
