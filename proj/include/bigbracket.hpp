#ifndef BIGBRACKET_HPP
#define BIGBRACKET_HPP

#include "bigbracket/core.hpp"
#include "bigbracket/bracket.hpp"
#include "bigbracket/verdict.hpp"
#include "bigbracket/homotopy.hpp"
#include "bigbracket/structures.hpp"
#include "bigbracket/manin.hpp"
#include "bigbracket/geom.hpp"
#include "bigbracket/expr.hpp"
#include "bigbracket/random.hpp"
#include "bigbracket/io.hpp"

#endif  // BIGBRACKET_HPP
