// Placeholder main; the full CLI is added once the library settles.
int main() { return 0; }
