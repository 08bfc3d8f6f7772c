"""Allow ``python -m klbraid`` as a synonym for the ``klb`` script."""

from .cli import entry_point

entry_point()
