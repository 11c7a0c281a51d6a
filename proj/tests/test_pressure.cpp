#include <doctest.h>
TEST_SUITE_BEGIN("pressure");
TEST_SUITE_END();
