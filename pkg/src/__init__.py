"""Ring laboratory package"""
