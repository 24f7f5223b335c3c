"""
The `hypertess` package computes Delaunay tessellations, Voronoi tessellations and geometric duals of finite point sets in
hyperbolic space H^n, using the convex hull of the points in the hyperboloid model of R^{n+1}.
It decides every combinatorial question exactly for rational input, and can also be used from the command line.
"""
__version__ = "0.1.0"
