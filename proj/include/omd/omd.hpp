#pragma once

#include "omd/base_constructions.hpp"
#include "omd/composer.hpp"
#include "omd/core.hpp"
#include "omd/io.hpp"
#include "omd/one_factorization.hpp"
#include "omd/room.hpp"
#include "omd/search.hpp"
#include "omd/verifier.hpp"
