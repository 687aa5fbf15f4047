"""Entry point for ``python -m pwasvar``."""

# Authors: pwasvar contributors
# License: BSD 3-clause

from pwasvar.cli import main

raise SystemExit(main())
