"""
The root package of the qkonc project.

qkonc measures the exponential concentration of fidelity kernel values under the
ZZ feature map and compares a shot-budget based quantum runtime model with the
measured time of classical statevector simulation.
"""

# Module constants
# ------------------------------------------------------------

__version__ = "0.1.0"
