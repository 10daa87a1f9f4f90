import json
from typing import Any

from histopolation.data.base import Source
from histopolation.errors import ParseError
from histopolation.interfaces.path import JsonFile


class JsonSource(Source[JsonFile, dict[str, Any]]):
    label = "Config file"

    def read(self, source: JsonFile) -> dict[str, Any]:
        self.require(source)
        with open(source.path, encoding="utf-8") as config_file:
            try:
                content = json.load(config_file)
            except json.JSONDecodeError as ex:
                raise ParseError(f"Invalid JSON in {source.path}: {ex.msg}", row=ex.lineno) from ex
        if not isinstance(content, dict):
            raise ParseError(f"Expected a JSON object in {source.path}")
        return content

    def write(self, source: JsonFile, content: dict[str, Any]):
        source.create_parent()
        with open(source.path, encoding="utf-8", mode="w") as config_file:
            json.dump(fp=config_file, obj=content, indent=4)
