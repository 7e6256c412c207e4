#pragma once

#include "relclass/arith.hpp"
#include "relclass/campaigns.hpp"
#include "relclass/forms.hpp"
#include "relclass/io.hpp"
#include "relclass/orders.hpp"
#include "relclass/parallel.hpp"
#include "relclass/pell.hpp"
