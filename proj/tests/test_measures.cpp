#include <doctest.h>
TEST_SUITE_BEGIN("measures");
TEST_SUITE_END();
