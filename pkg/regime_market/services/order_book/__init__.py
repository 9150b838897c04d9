from regime_market.services.order_book.order_book import OrderBook
