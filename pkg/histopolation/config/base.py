from typing import Any, Protocol


class Config(Protocol):
    def validate(self): ...

    def as_dict(self) -> dict[str, Any]: ...
