from typing import Protocol, TypeVar

from histopolation.interfaces.path import FileModel

TModel = TypeVar("TModel", bound=object, covariant=True)
TFile = TypeVar("TFile", bound=FileModel, contravariant=True)


class FileFactory(Protocol[TFile, TModel]):
    """Builds a model from a file, or from bundled defaults when no file is given."""

    def create(self, file: TFile, **kwargs) -> TModel: ...

    def default(self) -> TModel: ...
