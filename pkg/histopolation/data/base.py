from abc import ABC, abstractmethod
from typing import Generic, TypeVar

from histopolation.errors import ValidationError
from histopolation.interfaces.path import FileModel

TSource = TypeVar("TSource", bound=FileModel)
TContent = TypeVar("TContent", bound=object)


class Source(ABC, Generic[TSource, TContent]):
    """Reads and writes one artifact kind; ``label`` names it in error messages."""

    label: str = "File"

    def require(self, source: TSource) -> TSource:
        if not source.exists():
            raise ValidationError(f"{self.label} {source.path} does not exist")
        return source

    @abstractmethod
    def read(self, source: TSource) -> TContent: ...

    @abstractmethod
    def write(self, source: TSource, content: TContent): ...
