"""Ring descriptors and report schemas"""
