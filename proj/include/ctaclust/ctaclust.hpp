#ifndef CTACLUST_CTACLUST_HPP
#define CTACLUST_CTACLUST_HPP

#include "error.hpp"
#include "matrix.hpp"
#include "csv.hpp"
#include "corpus.hpp"
#include "porter2.hpp"
#include "preprocess.hpp"
#include "vectorize.hpp"
#include "similarity.hpp"
#include "kmeans.hpp"
#include "agnes.hpp"
#include "hybrid.hpp"
#include "evaluate.hpp"
#include "pipeline.hpp"
#include "artifacts.hpp"
#include "grid.hpp"

#endif
