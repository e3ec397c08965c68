"""Exception types raised across the package."""


class WitnessError(ValueError):
    """Base class for every error raised by sawitness."""


class SingularCurve(WitnessError):
    pass


class BadPrime(WitnessError):
    pass


class NotTorsion(WitnessError):
    pass


class TorsionGenerator(WitnessError):
    pass


class NoAdmissiblePrime(WitnessError):
    pass


class InvalidProgression(WitnessError):
    pass


class CheckFailed(WitnessError):
    def __init__(self, report):
        failed = ", ".join(report.failed()) or "none"
        super().__init__(f"witness checks failed: {failed}")
        self.report = report


class MalformedCertificate(WitnessError):
    def __init__(self, location, message):
        super().__init__(f"{location}: {message}")
        self.location = location
