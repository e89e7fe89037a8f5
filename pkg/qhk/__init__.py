"""qhk - Quandle homology kit: racks, quandles and their chain complexes"""

__version__ = "1.0.0"
