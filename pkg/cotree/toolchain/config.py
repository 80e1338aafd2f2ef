__all__ = [
    "CliConfig",
    "OutputFormat",
    "InvalidCliConfig",
    "config_error_handler",
    "load_cli_config",
    "DEFAULT_CEILING",
    "DEFAULT_SEARCH_CEILING",
    "DEFAULT_CAP",
]


from contextlib import contextmanager
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, ValidationError, root_validator

from cotree.analysis.sharding import default_shards
from cotree.core.error import BubbleException, InputError
from cotree.core.utils import JsonDict, format_validation_error

DEFAULT_CEILING = 28
DEFAULT_SEARCH_CEILING = 20
DEFAULT_CAP = 100

OutputFormat = Literal["table", "csv", "json"]

VERIFY_MODES = ("max_len", "max_b", "max_j", "trials", "converse")
SEARCH_MODES = ("converse_len", "flips_len")


class InvalidCliConfig(InputError, BubbleException):
    """Raised when the command-line arguments don't form a valid invocation."""

    explanation: str

    def __init__(self, explanation: str):
        super().__init__(explanation)
        self.explanation = explanation

    def __str__(self) -> str:
        return f"Invalid arguments.\n\n{self.explanation}"


class CliConfig(BaseModel):
    """Validated arguments of a single cotree invocation."""

    command: Literal["encode", "decode", "stats", "verify", "scan", "enumerate", "search"]

    code: Optional[str] = None
    pair: Optional[str] = None
    trace: bool = False
    labeled: bool = False

    max_len: Optional[int] = Field(None, ge=1)
    max_b: Optional[int] = Field(None, ge=2)
    max_j: Optional[int] = Field(None, ge=2)
    trials: Optional[int] = Field(None, ge=1)
    seed: int = 0
    converse: bool = False

    length: Optional[int] = Field(None, ge=1)
    weight: Optional[int] = Field(None, ge=0)
    depth: Optional[int] = Field(None, ge=0)
    converse_len: Optional[int] = Field(None, ge=1)
    flips_len: Optional[int] = Field(None, ge=1)

    format: OutputFormat = "table"
    out: Optional[Path] = None
    violation_cap: int = Field(DEFAULT_CAP, ge=0)
    shards: int = Field(default_factory=default_shards, ge=1)
    ceiling: Optional[int] = Field(None, ge=1)

    class Config:
        extra = "forbid"

    @root_validator(skip_on_failure=True)
    def check_command_arguments(cls, values: JsonDict) -> JsonDict:
        """Make sure the arguments needed by the selected command are present."""
        command = values["command"]

        if values.get("ceiling") is None:
            search = command == "search"
            values["ceiling"] = DEFAULT_SEARCH_CEILING if search else DEFAULT_CEILING
        ceiling = values["ceiling"]

        if command == "stats" and not values.get("code"):
            raise ValueError("The stats command needs a nonempty code.")

        if command == "encode" and values.get("pair") is None:
            raise ValueError("The encode command needs a pair.")

        if command == "verify":
            selected = [mode for mode in VERIFY_MODES if values.get(mode)]
            if len(selected) != 1:
                raise ValueError(
                    "Select exactly one of --reflection, --completeness, "
                    "--blocks, --homomorphism or --converse."
                )

        if command == "search":
            selected = [mode for mode in SEARCH_MODES if values.get(mode)]
            if len(selected) != 1:
                raise ValueError("Select exactly one of --converse or --flips.")
            length = values[selected[0]]
            if length > ceiling:
                raise ValueError(
                    f"Length {length} exceeds the ceiling {ceiling}. "
                    "Raise it with --ceiling."
                )

        if command == "scan":
            length = values.get("length")
            if length is None:
                raise ValueError("The scan command needs --len.")
            if length > ceiling:
                raise ValueError(
                    f"Length {length} exceeds the ceiling {ceiling}. "
                    "Raise it with --ceiling."
                )
            weight = values.get("weight")
            if weight is not None and weight > length:
                raise ValueError(f"Weight {weight} exceeds the length {length}.")

        if command == "enumerate":
            depth = values.get("depth")
            if depth is None:
                raise ValueError("The enumerate command needs --depth.")
            if depth > ceiling:
                raise ValueError(
                    f"Depth {depth} exceeds the ceiling {ceiling}. "
                    "Raise it with --ceiling."
                )

        return values


@contextmanager
def config_error_handler(command: str = "cotree"):
    """Turn validation errors into invalid argument errors."""
    try:
        yield
    except ValidationError as exc:
        message = format_validation_error(command, exc)
        raise InvalidCliConfig(message) from exc


def load_cli_config(**options: Any) -> CliConfig:
    """Validate the options of a command before running it."""
    command = options.get("command", "cotree")
    with config_error_handler(command):
        return CliConfig(**{k: v for k, v in options.items() if v is not None})
