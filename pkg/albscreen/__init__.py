"""
ALB Screening Toolkit
Feature screening with Average Log-Bayes factor statistics, permutation
cutoffs and a KDE-based Bayesian classifier.
"""

__version__ = "1.0.0"
