"""
Base repository for JSON artifacts.
Reads validate through a pydantic schema; writes are atomic.
"""

import os
import tempfile
from pathlib import Path
from typing import Any, Generic, Type, TypeVar, Union

import orjson
from pydantic import BaseModel, ValidationError

from cone_tutte.core.exceptions import ArtifactError
from cone_tutte.core.logging import get_logger

SchemaType = TypeVar("SchemaType", bound=BaseModel)
PathLike = Union[str, Path]

logger = get_logger(__name__)


def atomic_write_bytes(path: PathLike, data: bytes) -> None:
    """
    Write a file through a temporary sibling and rename it into place.

    Args:
        path: Destination file
        data: Full file contents

    Raises:
        ArtifactError: If the directory is missing or not writable
    """
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    if not directory.is_dir():
        raise ArtifactError(str(target), "output directory does not exist")
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=directory)
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, target)
    except OSError as exc:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise ArtifactError(str(target), str(exc)) from exc


def read_bytes(path: PathLike) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise ArtifactError(str(path), exc.strerror or str(exc)) from exc


def dumps(model: BaseModel) -> bytes:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return orjson.dumps(
        model.model_dump(mode="json"),
        option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE,
    )


class JsonRepository(Generic[SchemaType]):
    """
    Repository for one artifact schema.

    Type Parameters:
        SchemaType: Pydantic model describing the file
    """

    def __init__(self, schema: Type[SchemaType]):
        self.schema = schema

    def parse(self, raw: bytes, source: str = "<memory>") -> SchemaType:
        """
        Decode and validate raw JSON.

        Raises:
            ArtifactError: Malformed JSON, NaN/Inf or schema violations
        """
        try:
            payload: Any = orjson.loads(raw)
        except orjson.JSONDecodeError as exc:
            raise ArtifactError(source, f"invalid JSON: {exc}") from exc
        try:
            return self.schema.model_validate(payload)
        except ValidationError as exc:
            first = exc.errors()[0]
            where = ".".join(str(p) for p in first["loc"]) or "<root>"
            raise ArtifactError(source, f"{where}: {first['msg']}") from exc

    def read(self, path: PathLike) -> SchemaType:
        model = self.parse(read_bytes(path), str(path))
        logger.debug("artifact_read", path=str(path), schema=self.schema.__name__)
        return model

    def write(self, path: PathLike, model: SchemaType) -> None:
        atomic_write_bytes(path, dumps(model))
        logger.debug("artifact_written", path=str(path), schema=self.schema.__name__)
