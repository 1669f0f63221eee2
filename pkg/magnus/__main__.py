# magnus/__main__.py
from magnus.cli import main

main()
