#include "kerrh/verifier.hpp"
