from afsym.cli import main

main()
