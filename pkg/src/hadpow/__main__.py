from hadpow.cli import main

main()
