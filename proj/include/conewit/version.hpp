#ifndef CONEWIT_VERSION_HPP
#define CONEWIT_VERSION_HPP

#define CONEWIT_VERSION "0.1.0"

#endif
