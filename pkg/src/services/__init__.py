"""Ring arithmetic, ideals, classification, theorems and separator search"""
