from arrowrep.cli import main

main()
