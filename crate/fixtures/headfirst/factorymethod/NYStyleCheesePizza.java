package headfirst.factorymethod;

public class NYStyleCheesePizza extends Pizza {
    public NYStyleCheesePizza() {
        name = "NY Style Sauce and Cheese Pizza";
        toppings.add("Grated Reggiano Cheese");
    }
}
