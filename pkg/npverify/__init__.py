# npverify - strategy-proofness verification on the non-Paretian domain

__version__ = '0.1.0'
