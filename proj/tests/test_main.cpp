#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include "brickwall/parallel.hpp"

int main(int argc, char** argv) {
    brickwall::pin_blas_threads();
    doctest::Context ctx;
    ctx.applyCommandLine(argc, argv);
    return ctx.run();
}
