// placeholder; replaced before final build
int main() { return 1; }
