from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Type, TypeVar

import dacite

from shared.errors import PayloadError

T = TypeVar("T")

# JSON integers are accepted wherever a float is expected
_DACITE_CONFIG = dacite.Config(strict=True, type_hooks={float: float})


@dataclass(frozen=True)
class TransferFunctionPayload:
    """Transfer-function JSON object

    Coefficients ascend in powers of w = s^(1/base_v).
    """

    base_v: int
    num: list[float]
    den: list[float]


def from_dict(data_class: Type[T], data: Any) -> T:
    """Parse a JSON-decoded value into a dataclass.

    Args:
        data_class (Type[T]): Target dataclass
        data (Any): Decoded JSON value

    Returns:
        T: Parsed dataclass

    Raises:
        PayloadError: If the data does not match the dataclass
    """
    if not isinstance(data, dict):
        raise PayloadError(
            f"expected a JSON object for {data_class.__name__}, got "
            f"{type(data).__name__}"
        )
    try:
        return dacite.from_dict(data_class=data_class, data=data, config=_DACITE_CONFIG)
    except dacite.exceptions.DaciteError as e:
        raise PayloadError(f"invalid {data_class.__name__}: {e}") from e


def load_json_argument(value: str) -> Any:
    """Decode an inline JSON argument or the JSON file it names.

    Values starting with "{" or "[" are decoded inline, anything else is read as a
    path.

    Args:
        value (str): Inline JSON or path

    Returns:
        Any: Decoded JSON value

    Raises:
        PayloadError: If the JSON text is malformed
        OSError: If the file cannot be read
    """
    text = value.strip()
    if not text.startswith(("{", "[")):
        text = Path(value).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise PayloadError(f"malformed JSON: {e}") from e
