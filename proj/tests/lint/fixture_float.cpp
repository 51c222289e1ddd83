// Deliberately violates the integer-only rule; the lint must reject it.
bool admit(unsigned a, unsigned b) { return static_cast<double>(a) / b >= 0.5; }
