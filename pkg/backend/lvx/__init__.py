"""
LVX common utilities package.
"""
