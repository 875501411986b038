"""Shared error taxonomy.

ValueError subclasses (parse errors, validation failures, bad parameters)
mean the input was rejected; NumericalError means the input was accepted
but a numerical stage failed (divergent quadrature, solver contract
violation, coefficient evaluation blowing up mid-computation).  The CLI
maps the former to exit code 2 and the latter to exit code 3.
"""


class NumericalError(ArithmeticError):
    pass
