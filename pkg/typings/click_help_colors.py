from typing import Any, Optional

import click


class HelpColorsMixin:
    help_headers_color: Optional[str]
    help_options_color: Optional[str]


class HelpColorsGroup(HelpColorsMixin, click.Group):
    def __init__(
        self,
        *args: Any,
        help_headers_color: Optional[str] = None,
        help_options_color: Optional[str] = None,
        **kwargs: Any,
    ):
        ...


class HelpColorsCommand(HelpColorsMixin, click.Command):
    def __init__(
        self,
        *args: Any,
        help_headers_color: Optional[str] = None,
        help_options_color: Optional[str] = None,
        **kwargs: Any,
    ):
        ...
