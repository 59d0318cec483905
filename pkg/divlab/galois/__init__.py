"""Matrix groups mod n, stabiliser checks and first cohomology with local conditions."""
