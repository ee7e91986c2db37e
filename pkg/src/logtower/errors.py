"""Domain errors.  Each carries a stable ``code`` used in CLI payloads."""


class LogtowerError(Exception):
    code = "Error"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details

    def payload(self) -> dict:
        out = {"error": self.code, "message": str(self)}
        out.update({k: v for k, v in self.details.items() if v is not None})
        return out


def _make(name: str, *bases):
    return type(name, bases or (LogtowerError,), {"code": name})


DivisionByZero = _make("DivisionByZero", LogtowerError, ZeroDivisionError)
EmptyVector = _make("EmptyVector")
BothZero = _make("BothZero")
ZeroDenominator = _make("ZeroDenominator", LogtowerError, ZeroDivisionError)
ZeroDivisor = _make("ZeroDivisor", LogtowerError, ZeroDivisionError)
UnknownSymbol = _make("UnknownSymbol")
ConstantInput = _make("ConstantInput")
EmptyInput = _make("EmptyInput")
ZeroPolynomial = _make("ZeroPolynomial")
NonPolynomialCoefficient = _make("NonPolynomialCoefficient")
NotIterLogExpression = _make("NotIterLogExpression")
NotIterLog = _make("NotIterLog")
EmptyPresentation = _make("EmptyPresentation")
NotFixed = _make("NotFixed")
NotCoprime = _make("NotCoprime")
ZeroScale = _make("ZeroScale")
AtomRelation = _make("AtomRelation")
OutsideConstantField = _make("OutsideConstantField")
TowerError = _make("TowerError")


class ExprSyntaxError(LogtowerError):
    code = "SyntaxError"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}", position=position)
        self.position = position
