class AdapterError(Exception):
    """Adapter failure with a stable code (LAYER_NOT_CONV, CHECKPOINT_UNREADABLE, ...)."""

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)

    def __str__(self) -> str:
        return f"{self.code}: {super().__str__()}"
