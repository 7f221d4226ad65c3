# Topological cryptogroup toolkit
