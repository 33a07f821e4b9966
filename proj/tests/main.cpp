#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <string>

uint64_t test_seed() {
    if (const char* s = std::getenv("LIFTLAB_SEED")) return std::stoull(s);
    return 20260813ull;
}

int main(int argc, char** argv) {
    doctest::Context ctx;
    ctx.applyCommandLine(argc, argv);
    return ctx.run();
}
