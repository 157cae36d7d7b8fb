"""Quantum homogeneous spaces of SU_q(2) described by weighted graphs."""
