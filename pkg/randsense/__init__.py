"""
RandSense - Sensing With Random Communication Signals

Numerical library and experiment CLI for MIMO target-response estimation when
the probing waveform carries random data: ergodic LMMSE evaluation, the Jensen
(deterministic-training) bound, and water-filling, SCA and SGP precoders.
"""

__version__ = "0.1.0"
