# subcover: covering numbers of subordinator ranges
