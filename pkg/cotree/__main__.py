from cotree.toolchain.cli import main

main()
