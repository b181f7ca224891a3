"""Allow ``python -m cantor_measures ...`` to invoke the CLI."""
from .cli import main

main()
