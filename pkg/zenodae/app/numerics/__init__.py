"""
Numerical kernels: dense linear algebra, DAE reduction, dilations and the model problems
"""
