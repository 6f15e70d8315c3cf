"""
Package that contains the statevector simulator and the ZZ feature map circuits built on it.
"""
