"""Classification tools for parabolic geometries with symmetries.

Modules, in dependency order: ``rootsys`` (root data), ``parabolic``
(gradings), ``realform`` (real-form descriptors), ``kostant`` (harmonic
curvature components), ``chevalley`` (structure constants), ``symmetry``
(admissible symmetry actions), ``construct`` (explicit deformations) and
``cli``.
"""

__version__ = "0.1.0"
