"""Error type shared by every module; each failure carries a stable string code."""


class HenonError(Exception):
    """Raised when an operation cannot produce a certified answer.

    ``code`` is one of the machine-readable tags (``"orbit-overflow"``,
    ``"radius-too-small"``, ``"path-too-wild"`` ...). Extra keyword data is kept
    on ``info`` so callers (the CLI in particular) can report it.
    """

    def __init__(self, code: str, message: str = "", **info):
        self.code = code
        self.info = info
        super().__init__(f"{code}: {message}" if message else code)
