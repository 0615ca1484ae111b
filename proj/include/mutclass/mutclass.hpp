#pragma once

// Everything except the HTTP service (mutclass/service.hpp), which pulls in
// the server library.

#include "mutclass/integer.hpp"
#include "mutclass/int_matrix.hpp"
#include "mutclass/exchange.hpp"
#include "mutclass/diagram.hpp"
#include "mutclass/rational_linalg.hpp"
#include "mutclass/companion.hpp"
#include "mutclass/forms.hpp"
#include "mutclass/catalog.hpp"
#include "mutclass/classify.hpp"
#include "mutclass/io.hpp"
