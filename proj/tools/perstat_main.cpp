// perstat command line tool (subcommands are added as modules land)
#include <cstdio>

int main() {
    std::puts("perstat: not yet wired up");
    return 1;
}
