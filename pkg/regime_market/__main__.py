from regime_market.main import main

main()
