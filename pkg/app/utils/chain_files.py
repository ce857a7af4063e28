import json
import logging
import os

from pydantic import ValidationError

from app.exceptions import ChainFileError
from app.schemas.chain import ChainFile

logger = logging.getLogger(__name__)


def _describe(error: dict) -> str:
    location = ".".join(str(part) for part in error.get("loc", ()))
    return f"{location}: {error.get('msg')}" if location else error.get("msg", "invalid value")


def parse_chain(text: str, source: str = "<input>") -> ChainFile:
    """
    Parse chain-file JSON text.

    :param text: JSON document with "P", "U" and optionally "states".
    :param source: Name used in error messages.
    :return: The parsed ChainFile (matrix not yet validated).
    :raises ChainFileError: On malformed JSON or schema violations, naming the line or field.
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ChainFileError(f"{source}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
    try:
        return ChainFile.model_validate(payload)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first.get("loc", ())) or None
        raise ChainFileError(f"{source}: {_describe(first)}", field=field)


def read_chain_file(path: str) -> ChainFile:
    """
    Read and parse a chain file from disk.

    :raises ChainFileError: If the file is missing, unreadable or invalid.
    """
    if not path:
        logger.error("Chain file path is empty")
        raise ChainFileError("Chain file path cannot be empty")
    if not os.path.exists(path):
        raise ChainFileError(f"Chain file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        logger.error(f"Failed to read chain file {path}: {str(e)}", exc_info=True)
        raise ChainFileError(f"Failed to read chain file {path}: {e}")
    logger.debug(f"Read chain file {path} ({len(text)} bytes)")
    return parse_chain(text, source=path)
