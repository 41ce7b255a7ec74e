from .commands import Command, build_parser, dispatch, run
from .examples import EXAMPLE_IDS, ExampleBundle, reproduce_example

__all__ = [
    "Command",
    "EXAMPLE_IDS",
    "ExampleBundle",
    "build_parser",
    "dispatch",
    "reproduce_example",
    "run",
]
