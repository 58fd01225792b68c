int main() { return 2; } // replaced when the command-line tool lands
